"""presentation FILE: pi_1 presentation from a spanning tree, optionally Tietze-simplified."""
from __future__ import annotations

import argparse

from angled.dependencies import load_complex, write_report
from angled.errors import EXIT_OK
from angled.homotopy import fundamental_presentation, tietze_simplify


def register(subparsers) -> None:
    parser = subparsers.add_parser("presentation", help="fundamental group presentation")
    parser.add_argument("file", help="A2C file or build:<spec>")
    parser.add_argument("--basepoint", help="base vertex (default: the first vertex)")
    parser.add_argument("--simplify", action="store_true", help="apply Tietze eliminations")
    parser.add_argument("--budget", type=int, help="Tietze step budget (default from settings)")
    parser.add_argument("--json", metavar="PATH", help="write the Presentation as JSON")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    result = fundamental_presentation(load_complex(args.file), args.basepoint)
    if args.simplify:
        result = tietze_simplify(result, args.budget)
    print(result.describe())
    if args.json:
        write_report(result, args.json)
    return EXIT_OK
