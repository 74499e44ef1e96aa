"""
Tests for free faces, elementary collapses and the collapse decisions.
Run: pytest test_collapse.py
"""
import random

import pytest

from conftest import SEED, polygon_ring, random_disk
from angled.builders import build
from angled.collapse import (
    FreeFace,
    census_is_closed,
    classify_terminal,
    collapse_all,
    collapse_report,
    elementary_collapse,
    free_faces,
    pi1_is_z_decision,
    simply_connected_decision,
)
from angled.errors import StaleFreeFaceError
from angled.homotopy import h1
from angled.models import Complex2, Decision, Edge, FreeFaceKind, Mode, TerminalClass
from angled.weight_test import classify


def test_free_faces_of_a_square():
    faces = free_faces(build("polygon:4"))
    assert [str(f) for f in faces] == [
        "edge-in-face(e0, f)", "edge-in-face(e1, f)", "edge-in-face(e2, f)", "edge-in-face(e3, f)",
    ]


def test_closed_complexes_have_no_free_faces(torus, tetrahedron):
    assert free_faces(torus) == []
    assert free_faces(tetrahedron) == []
    assert census_is_closed(torus)
    trace = collapse_all(torus)
    assert trace.steps == ()
    assert trace.terminal_class == TerminalClass.STUCK


def test_elementary_collapse_keeps_angles():
    grid = build("grid:2,1")
    after = elementary_collapse(grid, FreeFace(FreeFaceKind.EDGE_IN_FACE, "h0_0", "f0_0"))
    assert [f.id for f in after.faces] == ["f1_0"]
    assert after.face("f1_0") == grid.face("f1_0")
    assert "h0_0" not in after.edge_index


def test_stale_free_face(torus):
    with pytest.raises(StaleFreeFaceError):
        elementary_collapse(torus, FreeFace(FreeFaceKind.EDGE_IN_FACE, "a", "f"))

    square = build("polygon:4")
    once = elementary_collapse(square, FreeFace(FreeFaceKind.EDGE_IN_FACE, "e0", "f"))
    with pytest.raises(StaleFreeFaceError):
        elementary_collapse(once, FreeFace(FreeFaceKind.EDGE_IN_FACE, "e1", "f"))


def test_random_disks_collapse_to_a_point():
    rng = random.Random(SEED)
    for _ in range(100):
        disk = random_disk(rng, rng.randint(1, 10))
        trace = collapse_all(disk)
        assert trace.terminal_class == TerminalClass.POINT
        assert len(trace.steps) == len(disk.edges)


def test_collapse_order_does_not_change_the_class():
    rng = random.Random(SEED)
    disk = random_disk(rng, 8)
    for _ in range(10):
        assert collapse_all(disk, rng=rng).terminal_class == TerminalClass.POINT


@pytest.mark.parametrize("k", range(3, 13))
def test_rings_collapse_to_a_cycle(k):
    rng = random.Random(SEED + k)
    assert collapse_all(polygon_ring(rng, k)).terminal_class == TerminalClass.CYCLE
    assert collapse_all(build(f"cylinder:{k}")).terminal_class == TerminalClass.CYCLE


def test_terminal_classes():
    point = Complex2(("v",), (), ())
    assert classify_terminal(point) == TerminalClass.POINT
    loop = Complex2(("v",), (Edge("a", "v", "v"),), ())
    assert classify_terminal(loop) == TerminalClass.CYCLE
    wedge = Complex2(("v",), (Edge("a", "v", "v"), Edge("b", "v", "v")), ())
    assert classify_terminal(wedge) == TerminalClass.GRAPH


def _collapse_step_by_step(complex_: Complex2) -> Complex2:
    """Replay collapse_all one elementary collapse at a time; H1 and the passed mode never change."""
    mode = Mode.NEGATIVE if classify(complex_).passes(Mode.NEGATIVE) else Mode.NONPOSITIVE
    assert classify(complex_).passes(mode)
    expected = h1(complex_)
    current = complex_
    for step in collapse_all(complex_).steps:
        current = elementary_collapse(current, step)
        assert h1(current) == expected
        assert classify(current).passes(mode)
    return current


def test_collapse_preserves_homology_and_link_condition_on_random_disks():
    rng = random.Random(SEED)
    for _ in range(100):
        terminal = _collapse_step_by_step(random_disk(rng, rng.randint(1, 6)))
        assert classify_terminal(terminal) == TerminalClass.POINT


@pytest.mark.parametrize(
    "spec",
    ["polygon:3", "polygon:6", "polygon:12", "grid:1,6", "grid:2,3", "grid:3,3", "heptadisk"],
)
def test_collapse_preserves_homology_and_link_condition_on_disks(spec):
    assert classify_terminal(_collapse_step_by_step(build(spec))) == TerminalClass.POINT


@pytest.mark.parametrize("k", range(3, 13))
def test_collapse_preserves_homology_and_link_condition_on_rings(k):
    rng = random.Random(SEED + k)
    for complex_ in (build(f"cylinder:{k}"), polygon_ring(rng, k)):
        assert h1(complex_).betti == 1
        assert classify_terminal(_collapse_step_by_step(complex_)) == TerminalClass.CYCLE


def test_simply_connected_passing_complexes_have_free_faces():
    rng = random.Random(SEED)
    corpus = [build(s) for s in ("polygon:3", "polygon:8", "grid:2,2", "grid:4,3", "heptadisk")]
    corpus += [random_disk(rng, rng.randint(1, 10)) for _ in range(50)]
    for complex_ in corpus:
        assert classify(complex_).passes(Mode.NONPOSITIVE)
        assert h1(complex_).betti == 0 and h1(complex_).torsion == []
        assert free_faces(complex_)


@pytest.mark.parametrize("spec", ["torus", "surface:2", "surface:3"])
def test_closed_passing_complexes_are_not_simply_connected(spec):
    complex_ = build(spec)
    assert classify(complex_).passes(Mode.NONPOSITIVE)
    assert free_faces(complex_) == []
    assert h1(complex_).betti > 0


@pytest.mark.parametrize(
    "spec, simply, pi1",
    [
        ("grid:3,2", Decision.YES, Decision.NOT_APPLICABLE),
        ("heptadisk", Decision.YES, Decision.NO),
        ("cylinder:3", Decision.NO, Decision.YES),
        ("torus", Decision.NO, Decision.NOT_APPLICABLE),
        ("tetrahedron", Decision.NOT_APPLICABLE, Decision.NOT_APPLICABLE),
        ("surface:2", Decision.NO, Decision.NO),
    ],
)
def test_decisions(spec, simply, pi1):
    complex_ = build(spec)
    assert simply_connected_decision(complex_) == simply
    assert pi1_is_z_decision(complex_) == pi1


def test_report():
    report = collapse_report(build("grid:2,2"), decide=True)
    assert report.terminal_class == TerminalClass.POINT
    assert (report.terminal_vertices, report.terminal_edges, report.terminal_faces) == (1, 0, 0)
    assert len(report.steps) == 12
    assert report.simply_connected == Decision.YES

    bare = collapse_report(build("torus"))
    assert bare.weight_class is None
    assert bare.simply_connected is None
