"""
collapse FILE: greedy free-face collapse.
With --decide-pi1 the weight-test class is combined with the terminal class
into the simple-connectivity and pi_1 = Z decisions.
"""
from __future__ import annotations

import argparse

from angled.collapse import collapse_all, collapse_report
from angled.dependencies import load_complex, write_complex, write_report
from angled.errors import EXIT_OK


def register(subparsers) -> None:
    parser = subparsers.add_parser("collapse", help="collapse free faces until none remain")
    parser.add_argument("file", help="A2C file or build:<spec>")
    parser.add_argument("--decide-pi1", action="store_true", help="report the pi_1 decisions")
    parser.add_argument("-o", "--output", metavar="PATH", help="write the terminal complex as A2C")
    parser.add_argument("--json", metavar="PATH", help="write the CollapseReport as JSON")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    complex_ = load_complex(args.file)
    report = collapse_report(complex_, decide=args.decide_pi1)
    print(f"collapses: {len(report.steps)}")
    print(
        f"terminal: {report.terminal_class.value} "
        f"({report.terminal_vertices} vertices, {report.terminal_edges} edges, {report.terminal_faces} faces)"
    )
    if args.decide_pi1:
        print(f"weight test: {report.weight_class.value}")
        print(f"simply connected: {report.simply_connected.value} (terminal = {report.terminal_class.value})")
        print(f"pi1 = Z: {report.pi1_is_z.value} (terminal = {report.terminal_class.value})")
    if args.output:
        write_complex(collapse_all(complex_).terminal, args.output)
    if args.json:
        write_report(report, args.json)
    return EXIT_OK
