"""build SPEC: write a canonical complex as A2C (stdout without -o)."""
from __future__ import annotations

import argparse

from angled.a2c import serialize_a2c
from angled.builders import build
from angled.dependencies import write_complex
from angled.errors import EXIT_OK


def register(subparsers) -> None:
    parser = subparsers.add_parser("build", help="construct a canonical complex")
    parser.add_argument("spec", help="e.g. polygon:5, grid:3,4, torus, presentation:a,b|a b a^-1 b^-1")
    parser.add_argument("-o", "--output", metavar="PATH", help="A2C output file")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    complex_ = build(args.spec)
    if args.output:
        write_complex(complex_, args.output)
    else:
        print(serialize_a2c(complex_), end="")
    return EXIT_OK
