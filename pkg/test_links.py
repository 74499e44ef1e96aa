"""
Tests for link metric graphs: construction, distances, girth, eccentricity.
Run: pytest test_links.py
"""
import random

import pytest

from conftest import SEED, brute_force_girth, parallelogram_torus, random_link
from angled.builders import build
from angled.errors import PointNotInLinkError
from angled.links import (
    LinkNode,
    MetricPoint,
    build_link,
    distance,
    eccentricity,
    link_of_edge_interior,
    link_report,
    link_to_dot,
    points_at_distance_at_least,
    shortest_cycle,
)
from angled.models import PI, Angle, End, LinkKind


def test_torus_vertex_link(torus):
    link = build_link(torus, "v")
    assert link.kind == LinkKind.VERTEX
    assert len(link.nodes) == 4
    assert [a.id for a in link.arcs] == ["f#0", "f#1", "f#2", "f#3"]
    assert link.euler_characteristic == 0
    assert link.total_length == Angle(2)

    arc = link.arc("f#0")
    assert arc.u == LinkNode("a", End.HEAD)
    assert arc.v == LinkNode("b", End.TAIL)


def test_torus_girth_is_exactly_two_pi(torus):
    cycle = shortest_cycle(build_link(torus, "v"))
    assert cycle.length == Angle(2)
    assert sorted(cycle.arcs) == ["f#0", "f#1", "f#2", "f#3"]
    assert cycle.arcs[0] == "f#0"


def test_heptadisk_links(heptadisk):
    centre = shortest_cycle(build_link(heptadisk, "c"))
    assert centre.length == Angle("7/3")
    assert len(centre.arcs) == 7
    assert shortest_cycle(build_link(heptadisk, "p0")) is None


def test_edge_interior_link(torus):
    link = link_of_edge_interior(torus, "a")
    assert link.kind == LinkKind.EDGE
    assert [a.id for a in link.arcs] == ["f@0", "f@2"]
    assert all(a.length == PI for a in link.arcs)
    p = MetricPoint.on("f@0", Angle("1/3"))
    q = MetricPoint.on("f@2", Angle("2/3"))
    assert distance(link, p, q) == PI
    assert distance(link, p, MetricPoint.on("f@0", Angle("1/2"))) == Angle("1/6")


def test_single_adjacency_edge_link():
    disk = build("polygon:4")
    link = link_of_edge_interior(disk, "e0")
    assert len(link.arcs) == 1
    x = MetricPoint.at(LinkNode("e0", End.X))
    assert distance(link, x, MetricPoint.at(LinkNode("e0", End.Y))) == PI

    cylinder = build("cylinder:3")
    lonely = link_of_edge_interior(cylinder, "t0")
    assert eccentricity(lonely, MetricPoint.at(LinkNode("t0", End.X))).value == PI


def test_canonical_points(torus):
    link = build_link(torus, "v")
    assert link.canonical(MetricPoint.on("f#1", Angle(0))) == MetricPoint.at(LinkNode("b", End.HEAD))
    assert link.canonical(MetricPoint.on("f#1", Angle("1/2"))) == MetricPoint.at(LinkNode("a", End.HEAD))
    with pytest.raises(PointNotInLinkError):
        link.canonical(MetricPoint.on("f#1", Angle("3/4")))
    with pytest.raises(PointNotInLinkError):
        link.canonical(MetricPoint.on("g#0", Angle("1/4")))


def test_torus_eccentricity_and_far_set(torus):
    link = build_link(torus, "v")
    point = MetricPoint.on("f#1", Angle("1/4"))
    far = eccentricity(link, point)
    assert far.value == PI
    assert far.witness == MetricPoint.on("f#3", Angle("1/4"))

    at_pi = points_at_distance_at_least(link, point, PI)
    assert at_pi.nodes == ()
    assert [(i.arc, i.lo, i.hi) for i in at_pi.intervals] == [("f#3", Angle("1/4"), Angle("1/4"))]
    assert points_at_distance_at_least(link, point, Angle("3/2")).is_empty


def test_forest_eccentricity():
    """A disk corner: the link is one arc, so nothing is pi away"""
    disk = build("polygon:4")
    link = build_link(disk, "v1")
    far = eccentricity(link, MetricPoint.at(link.arcs[0].u))
    assert far.value == Angle("1/2")
    assert far.witness == MetricPoint.at(link.arcs[0].v)


def test_girth_matches_brute_force():
    """Weighted girth against exhaustive simple-cycle enumeration"""
    rng = random.Random(SEED)
    for _ in range(500):
        link = random_link(rng)
        found = shortest_cycle(link)
        expected = brute_force_girth(link)
        if expected is None:
            assert found is None
        else:
            assert found is not None and found.length == expected
            witness = [link.arc(a) for a in found.arcs]
            assert sum((a.length for a in witness), Angle(0)) == found.length


def _random_point(link, rng: random.Random) -> MetricPoint:
    if link.arcs and rng.random() < 0.75:
        arc = rng.choice(link.arcs)
        return MetricPoint.on(arc.id, arc.length * rng.randint(0, 6) / 6)
    return MetricPoint.at(rng.choice(link.nodes))


def test_distance_is_a_metric():
    """Identity, symmetry and the triangle inequality on random triples"""
    rng = random.Random(SEED)
    for _ in range(300):
        link = random_link(rng)
        p, q, r = (_random_point(link, rng) for _ in range(3))
        assert distance(link, p, p) == Angle(0)
        pq, qp = distance(link, p, q), distance(link, q, p)
        assert pq == qp
        qr, pr = distance(link, q, r), distance(link, p, r)
        if pq is not None and qr is not None:
            assert pr is not None
            assert pr <= pq + qr


def test_distance_is_a_metric_in_complex_links(heptadisk):
    rng = random.Random(SEED)
    links = [build_link(heptadisk, v) for v in heptadisk.vertices]
    links += [build_link(parallelogram_torus(2, 3, Angle("2/5")), "p0_0")]
    for _ in range(200):
        link = rng.choice(links)
        p, q, r = (_random_point(link, rng) for _ in range(3))
        pq, qr, pr = distance(link, p, q), distance(link, q, r), distance(link, p, r)
        assert pq == distance(link, q, p)
        assert pr <= pq + qr


@pytest.mark.parametrize("a", ["1/2", "1/3", "2/5"])
def test_no_free_faces_means_eccentricity_at_least_pi(a):
    """Closed parallelogram tori: every link direction has a partner pi away"""
    rng = random.Random(SEED)
    complex_ = parallelogram_torus(3, 2, Angle(a))
    links = [build_link(complex_, v) for v in complex_.vertices]
    for _ in range(200):
        link = rng.choice(links)
        arc = rng.choice(link.arcs)
        offset = arc.length * rng.randint(0, 12) / 12
        far = eccentricity(link, MetricPoint.on(arc.id, offset))
        assert far.value is None or far.value >= PI


def test_exports(torus):
    link = build_link(torus, "v")
    report = link_report(link)
    assert report.girth == Angle(2)
    assert report.euler_characteristic == 0
    assert '"girth": "2"' in report.to_json()
    dot = link_to_dot(link)
    assert dot.startswith('graph "Lk(v)" {')
    assert '"a_head" -- "b_tail" [label="f#0 1/2"];' in dot
    assert link.to_networkx().number_of_edges() == 4
