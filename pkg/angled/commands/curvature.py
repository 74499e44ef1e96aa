"""
curvature FILE: per-vertex angle sums and curvature.
For complexes flagged as disk diagrams the Gauss-Bonnet residual is shown;
a nonzero residual exits 1.
"""
from __future__ import annotations

import argparse

from angled.curvature import curvature_report
from angled.dependencies import load_complex, write_report
from angled.errors import EXIT_FAILED, EXIT_OK
from angled.models import ZERO


def register(subparsers) -> None:
    parser = subparsers.add_parser("curvature", help="vertex curvature and Gauss-Bonnet")
    parser.add_argument("file", help="A2C file or build:<spec>")
    parser.add_argument("--json", metavar="PATH", help="write the CurvatureReport as JSON")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    report = curvature_report(load_complex(args.file))
    for record in report.vertices:
        print(f"{record.vertex}: S = {record.angle_sum} pi, chi(Lk) = {record.chi_link}, kappa = {record.kappa} pi")
    print(f"total curvature: {report.total} pi")
    if report.gauss_bonnet_residual is not None:
        print(f"Gauss-Bonnet residual: {report.gauss_bonnet_residual} pi")
    if args.json:
        write_report(report, args.json)
    if report.gauss_bonnet_residual is not None and report.gauss_bonnet_residual != ZERO:
        return EXIT_FAILED
    return EXIT_OK
