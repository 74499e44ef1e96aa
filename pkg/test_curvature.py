"""
Tests for angle sums, curvature and the Gauss-Bonnet check.
Run: pytest test_curvature.py
"""
import random

import pytest

from conftest import SEED, random_disk
from angled.builders import build
from angled.curvature import angle_sum, curvature_report, gauss_bonnet_check, kappa, vertex_curvature
from angled.errors import NotADiskDiagramError
from angled.models import ZERO, Angle, Complex2, DirectedEdge, Edge, Face


@pytest.mark.parametrize("n", range(3, 13))
def test_polygon_gauss_bonnet_is_exact(n):
    assert gauss_bonnet_check(build(f"polygon:{n}")) == ZERO


@pytest.mark.parametrize("m,k", [(1, 1), (2, 3), (4, 4), (6, 6), (1, 6)])
def test_grid_gauss_bonnet_is_exact(m, k):
    assert gauss_bonnet_check(build(f"grid:{m},{k}")) == ZERO


def test_random_disks_gauss_bonnet():
    rng = random.Random(SEED)
    for _ in range(50):
        assert gauss_bonnet_check(random_disk(rng, rng.randint(1, 12))) == ZERO


def test_vertex_curvature_values(torus, heptadisk):
    """Flat torus vertex; heptadisk centre carries negative curvature"""
    assert angle_sum(torus, "v") == Angle(2)
    assert kappa(torus, "v") == ZERO

    centre = vertex_curvature(heptadisk, "c")
    assert centre.angle_sum == Angle("7/3")
    assert centre.chi_link == 0
    assert centre.kappa == Angle("-1/3")

    grid = build("grid:2,2")
    assert kappa(grid, "p0_0") == Angle("1/2")
    assert kappa(grid, "p1_1") == ZERO
    assert kappa(grid, "p1_0") == ZERO


def test_not_a_disk_diagram(torus):
    with pytest.raises(NotADiskDiagramError):
        gauss_bonnet_check(torus)


def test_report(heptadisk):
    report = curvature_report(heptadisk)
    assert report.is_disk_diagram
    assert report.gauss_bonnet_residual == ZERO
    assert report.total == Angle(2)
    assert [v.vertex for v in report.vertices][0] == "c"

    closed = curvature_report(build("tetrahedron"))
    assert closed.gauss_bonnet_residual is None
    assert closed.total == Angle(4)


def _relabel(complex_: Complex2, rng: random.Random) -> tuple[Complex2, dict[str, str]]:
    """Fresh shuffled identifiers for every cell, declarations in shuffled order."""
    def names(ids, prefix):
        fresh = [f"{prefix}{i}" for i in range(len(ids))]
        rng.shuffle(fresh)
        return dict(zip(ids, fresh))

    vertex_names = names(complex_.vertices, "x")
    edge_names = names([e.id for e in complex_.edges], "y")
    face_names = names([f.id for f in complex_.faces], "z")
    edges = [Edge(edge_names[e.id], vertex_names[e.tail], vertex_names[e.head]) for e in complex_.edges]
    faces = [
        Face(face_names[f.id], tuple(DirectedEdge(edge_names[d.edge], d.sign) for d in f.boundary), f.angles)
        for f in complex_.faces
    ]
    vertices = list(vertex_names.values())
    for cells in (vertices, edges, faces):
        rng.shuffle(cells)
    relabeled = Complex2(tuple(vertices), tuple(edges), tuple(faces), is_disk_diagram=complex_.is_disk_diagram)
    return relabeled, vertex_names


@pytest.mark.parametrize("spec", ["heptadisk", "grid:2,3", "cylinder:5", "tetrahedron", "surface:2"])
def test_kappa_is_invariant_under_relabelling(spec):
    rng = random.Random(SEED)
    complex_ = build(spec)
    for _ in range(5):
        relabeled, vertex_names = _relabel(complex_, rng)
        for vertex in complex_.vertices:
            assert kappa(relabeled, vertex_names[vertex]) == kappa(complex_, vertex)
        assert curvature_report(relabeled).total == curvature_report(complex_).total


def test_random_disk_kappa_is_invariant_under_relabelling():
    rng = random.Random(SEED)
    disk = random_disk(rng, 7)
    relabeled, vertex_names = _relabel(disk, rng)
    assert gauss_bonnet_check(relabeled) == ZERO
    assert sorted(kappa(relabeled, vertex_names[v]) for v in disk.vertices) == sorted(
        kappa(disk, v) for v in disk.vertices
    )
