"""
validate FILE: structural and angle checks.
Exit codes:
1. 0 when every invariant holds
2. 1 when the report lists violations
3. 2 when the file cannot be read or parsed
"""
from __future__ import annotations

import argparse

from angled.core import validate
from angled.dependencies import load_complex, write_report
from angled.errors import EXIT_FAILED, EXIT_OK


def register(subparsers) -> None:
    parser = subparsers.add_parser("validate", help="check the invariants of a complex")
    parser.add_argument("file", help="A2C file or build:<spec>")
    parser.add_argument("--json", metavar="PATH", help="write the ValidationReport as JSON")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    complex_ = load_complex(args.file)
    report = validate(complex_)
    if report.ok:
        print(f"valid: {len(complex_.vertices)} vertices, {len(complex_.edges)} edges, {len(complex_.faces)} faces")
    else:
        for violation in report.violations:
            cells = f" [{', '.join(violation.cells)}]" if violation.cells else ""
            print(f"{violation.rule}: {violation.message}{cells}")
    if args.json:
        write_report(report, args.json)
    return EXIT_OK if report.ok else EXIT_FAILED
