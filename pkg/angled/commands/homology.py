"""homology FILE: H_1 from the boundary maps, cross-checked against the presentation."""
from __future__ import annotations

import argparse
import logging

from angled.dependencies import load_complex, write_report
from angled.errors import EXIT_OK
from angled.homotopy import abelian_invariants, fundamental_presentation, h1
from angled.schemas import HomologyReport

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("homology", help="first homology group")
    parser.add_argument("file", help="A2C file or build:<spec>")
    parser.add_argument("--json", metavar="PATH", help="write the HomologyReport as JSON")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    complex_ = load_complex(args.file)
    homology = h1(complex_)
    abelianized = abelian_invariants(fundamental_presentation(complex_))
    if abelianized != homology:
        logger.warning("H1 %s differs from the abelianized presentation %s", homology.describe(), abelianized.describe())
    report = HomologyReport(h1=homology, presentation_abelianization=abelianized)
    print(f"H1 = {homology.describe()}")
    if args.json:
        write_report(report, args.json)
    return EXIT_OK
