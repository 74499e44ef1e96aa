"""
Angle sums, vertex curvature and the combinatorial Gauss-Bonnet check.

    kappa(v) = 2*pi - pi * chi(Lk(v)) - S(v)

with chi(Lk(v)) = nodes - arcs of the vertex link and S(v) the sum of corner
angles at v. Everything is exact.
"""
from __future__ import annotations

import logging

from angled.core import require_valid
from angled.errors import NotADiskDiagramError
from angled.links import build_link
from angled.models import PI, TWO_PI, ZERO, Angle, Complex2
from angled.schemas import CurvatureReport, VertexCurvature

logger = logging.getLogger(__name__)


def angle_sum(complex_: Complex2, vertex: str) -> Angle:
    """S(v): exact sum of the corner angles located at v."""
    return sum((complex_.angle_at(c) for c in complex_.corners_at(vertex)), ZERO)


def kappa(complex_: Complex2, vertex: str) -> Angle:
    link = build_link(complex_, vertex)
    return TWO_PI - PI * link.euler_characteristic - link.total_length


def vertex_curvature(complex_: Complex2, vertex: str) -> VertexCurvature:
    link = build_link(complex_, vertex)
    s = link.total_length
    chi = link.euler_characteristic
    return VertexCurvature(vertex=vertex, angle_sum=s, chi_link=chi, kappa=TWO_PI - PI * chi - s)


def gauss_bonnet_check(complex_: Complex2) -> Angle:
    """
    Residual sum(kappa) - 2*pi for a planar simply connected complex.

    Planarity and simple connectivity are not decided here: the caller asserts
    them through the disk_diagram flag. Zero certifies agreement with
    Gauss-Bonnet; a nonzero value on a mislabeled complex is informative.
    """
    if not complex_.is_disk_diagram:
        raise NotADiskDiagramError()
    require_valid(complex_)
    total = sum((kappa(complex_, v) for v in complex_.vertices), ZERO)
    return total - TWO_PI


def curvature_report(complex_: Complex2) -> CurvatureReport:
    require_valid(complex_)
    records = [vertex_curvature(complex_, v) for v in complex_.vertices]
    total = sum((r.kappa for r in records), ZERO)
    residual = total - TWO_PI if complex_.is_disk_diagram else None
    if residual is not None and residual != ZERO:
        logger.warning("Gauss-Bonnet residual %s pi on a complex flagged as a disk diagram", residual)
    return CurvatureReport(
        vertices=records,
        total=total,
        is_disk_diagram=complex_.is_disk_diagram,
        gauss_bonnet_residual=residual,
    )
