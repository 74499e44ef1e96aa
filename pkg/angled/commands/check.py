"""
check FILE --mode MODE: the weight test.
Prints the girth of every vertex link and the classification;
exits 0 when the classification passes the requested mode, 1 otherwise.
"""
from __future__ import annotations

import argparse

from angled.dependencies import load_complex, write_report
from angled.errors import EXIT_FAILED, EXIT_OK
from angled.models import Mode
from angled.weight_test import classify, passes


def register(subparsers) -> None:
    parser = subparsers.add_parser("check", help="run the weight test")
    parser.add_argument("file", help="A2C file or build:<spec>")
    parser.add_argument("--mode", type=Mode, choices=[m.value for m in Mode], default=Mode.NONPOSITIVE)
    parser.add_argument("--json", metavar="PATH", help="write the WeightTestReport as JSON")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    report = classify(load_complex(args.file))
    for record in report.vertices:
        if record.girth is None:
            print(f"{record.vertex}: no link cycle")
        else:
            print(f"{record.vertex}: girth {record.girth} pi via {' '.join(record.witness)}")
    ok = passes(report, args.mode)
    print(f"classification: {report.classification.value} ({args.mode.value}: {'pass' if ok else 'fail'})")
    if args.json:
        write_report(report, args.json)
    return EXIT_OK if ok else EXIT_FAILED
