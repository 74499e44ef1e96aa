"""
trace FILE: follow a straight segmental path.
Single trace: --face F --point x,y --dir dx,dy (point in the face's realization).
Sampled traces: --random-starts N, seeded by the global --seed.
Every path is re-verified with verify_straight; exit 1 if any check fails
or if a path stops at a free edge.
"""
from __future__ import annotations

import argparse
import random

from angled.dependencies import load_complex, write_report
from angled.errors import EXIT_FAILED, EXIT_OK, AngledError
from angled.geometry import FacePoint, Termination, Tracer, random_start, trace_report, verify_straight
from angled.models import TerminationReason
from angled.rendering import render_trace_svg
from angled.schemas import StraightnessVerdict


def _pair(text: str, what: str) -> tuple[float, float]:
    try:
        x, y = (float(part) for part in text.split(","))
    except ValueError:
        raise AngledError(f"{what} must be two comma-separated numbers, got {text!r}") from None
    return x, y


def _succeeded(termination: Termination, verdict: StraightnessVerdict) -> bool:
    return verdict.ok and termination.reason != TerminationReason.FREE_EDGE_HIT


def register(subparsers) -> None:
    parser = subparsers.add_parser("trace", help="trace a straight path through the faces")
    parser.add_argument("file", help="A2C file or build:<spec>")
    parser.add_argument("--face", help="starting face")
    parser.add_argument("--point", help="x,y inside the face realization")
    parser.add_argument("--dir", help="dx,dy initial direction")
    parser.add_argument("--max-steps", type=int, help="segment bound (default from settings)")
    parser.add_argument("--random-starts", type=int, metavar="N", help="trace N seeded random starts")
    parser.add_argument("--svg", metavar="PATH", help="write the unfolded path as SVG")
    parser.add_argument("--json", metavar="PATH", help="write the TraceReport as JSON")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    complex_ = load_complex(args.file)
    tracer = Tracer(complex_)

    if args.random_starts is not None:
        rng = random.Random(args.seed)
        failures = 0
        for k in range(args.random_starts):
            start, direction = random_start(complex_, rng, tracer)
            path, termination = tracer.trace(start, direction, args.max_steps)
            verdict = verify_straight(complex_, path)
            failures += not _succeeded(termination, verdict)
            print(
                f"{k}: {start.face} ({start.x:.6f}, {start.y:.6f}) -> "
                f"{termination.reason.value} at {termination.location} "
                f"after {len(path.segments)} segments, {'straight' if verdict.ok else verdict.message}"
            )
        return EXIT_OK if failures == 0 else EXIT_FAILED

    if not (args.face and args.point and args.dir):
        raise AngledError("trace needs --face, --point and --dir, or --random-starts")
    x, y = _pair(args.point, "--point")
    direction = _pair(args.dir, "--dir")
    path, termination = tracer.trace(FacePoint(args.face, x, y), direction, args.max_steps)
    verdict = verify_straight(complex_, path)

    for k, segment in enumerate(path.segments):
        print(
            f"segment {k}: {segment.face} ({segment.start[0]:.6f}, {segment.start[1]:.6f}) -> "
            f"({segment.end[0]:.6f}, {segment.end[1]:.6f})"
        )
        if k < len(path.breakpoints):
            point = path.breakpoints[k]
            gap = "inf" if point.witness.distance is None else f"{point.witness.distance} pi"
            print(f"  {point.kind.value} {point.cell}: {point.witness.entry} -> {point.witness.exit} ({gap})")
    print(f"termination: {termination.reason.value} at {termination.location}")
    print(f"straight: {'yes' if verdict.ok else 'no, ' + verdict.message}")

    if args.svg:
        render_trace_svg(tracer, path, termination, args.svg)
    if args.json:
        write_report(trace_report(path, termination, verdict), args.json)
    return EXIT_OK if _succeeded(termination, verdict) else EXIT_FAILED
