"""
solve-angles FILE --mode MODE: search for a weight-test-passing angle assignment.
Feasible: print the slack, optionally write the angled complex (exit 0).
Infeasible: print the counting certificate (exit 1).
"""
from __future__ import annotations

import argparse

from angled.a2c import serialize_a2c
from angled.angle_solver import apply_solution, solve_angles
from angled.dependencies import load_complex, write_complex, write_report
from angled.errors import EXIT_FAILED, EXIT_OK
from angled.models import Mode, SolveStatus


def register(subparsers) -> None:
    parser = subparsers.add_parser("solve-angles", help="find corner angles passing the weight test")
    parser.add_argument("file", help="A2C file (angles optional) or build:<spec>")
    parser.add_argument("--mode", type=Mode, choices=[m.value for m in Mode], default=Mode.NONPOSITIVE)
    parser.add_argument("-o", "--output", metavar="PATH", help="write the angled complex as A2C")
    parser.add_argument("--json", metavar="PATH", help="write the SolveOutcome as JSON")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    complex_ = load_complex(args.file)
    outcome = solve_angles(complex_, args.mode)
    print(f"{outcome.status.value} ({outcome.mode.value}) after {outcome.rounds} rounds, {len(outcome.cycles)} cycles")

    if outcome.status == SolveStatus.FEASIBLE:
        print(f"slack: {outcome.margin} pi")
        angled = apply_solution(complex_, outcome)
        if args.output:
            write_complex(angled, args.output)
        else:
            print(serialize_a2c(angled), end="")
    else:
        certificate = outcome.certificate
        for cycle in certificate.cycles:
            if cycle.multiplier:
                print(f"  {cycle.multiplier} x cycle at {cycle.vertex}: {' '.join(cycle.corners)}")
        for face, weight in certificate.face_multipliers.items():
            print(f"  {weight} x face {face}")
        print(
            f"demand {certificate.demand} pi vs supply {certificate.supply} pi"
            f"{' (tight)' if certificate.tight else ''}"
        )

    if args.json:
        write_report(outcome, args.json)
    return EXIT_OK if outcome.status == SolveStatus.FEASIBLE else EXIT_FAILED
