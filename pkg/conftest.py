"""
Shared fixtures and seeded generators for the test suite.

Generators:
- random_disk: polygons glued one at a time along a single-adjacency edge
- parallelogram_torus: m x k torus of parallelograms with angles a, 1-a, a, 1-a
- polygon_ring: ring of polygons with subdivided bottom sides
- random_link: small weighted multigraph with loops and parallel arcs
- brute_force_girth: exhaustive simple-cycle enumeration
"""
from __future__ import annotations

import os
import random
from fractions import Fraction
from itertools import combinations

import networkx as nx
import pytest

from angled.a2c import uniform_angles
from angled.builders import build
from angled.config import get_settings
from angled.links import LinkArc, LinkGraph, LinkNode
from angled.models import Angle, Complex2, DirectedEdge, Edge, End, Face, LinkKind

SEED = 20240611


# ======================================
# COMPLEX GENERATORS
# ======================================

def random_disk(rng: random.Random, n_faces: int) -> Complex2:
    """Tree of polygons: each new polygon shares one boundary edge with the disk so far."""
    size = rng.randint(3, 6)
    vertices = [f"v{i}" for i in range(size)]
    edges = [Edge(f"e{i}", f"v{i}", f"v{(i + 1) % size}") for i in range(size)]
    faces = [Face("f0", tuple(DirectedEdge(f"e{i}") for i in range(size)), uniform_angles(size))]
    census = {e.id: 1 for e in edges}

    for k in range(1, n_faces):
        free = sorted(e for e, c in census.items() if c == 1)
        chosen = rng.choice(free)
        glue = next(e for e in edges if e.id == chosen)
        size = rng.randint(3, 6)
        fresh = [f"v{len(vertices) + i}" for i in range(size - 2)]
        vertices += fresh
        path = [glue.tail] + fresh + [glue.head]
        word = [DirectedEdge(glue.id, -1)]
        for a, b in zip(path, path[1:]):
            edge = Edge(f"e{len(edges)}", a, b)
            edges.append(edge)
            census[edge.id] = 1
            word.append(DirectedEdge(edge.id))
        census[glue.id] = 2
        faces.append(Face(f"f{k}", tuple(word), uniform_angles(size)))

    return Complex2(tuple(vertices), tuple(edges), tuple(faces), is_disk_diagram=True, source="random-disk")


def parallelogram_torus(m: int, k: int, a: Angle) -> Complex2:
    """Closed torus; every vertex link is a single 4-cycle of length exactly 2*pi."""
    b = Angle(1) - a
    vertices = tuple(f"p{i}_{j}" for i in range(m) for j in range(k))
    edges = [Edge(f"h{i}_{j}", f"p{i}_{j}", f"p{(i + 1) % m}_{j}") for i in range(m) for j in range(k)]
    edges += [Edge(f"u{i}_{j}", f"p{i}_{j}", f"p{i}_{(j + 1) % k}") for i in range(m) for j in range(k)]
    faces = tuple(
        Face(
            f"f{i}_{j}",
            (
                DirectedEdge(f"h{i}_{j}", 1),
                DirectedEdge(f"u{(i + 1) % m}_{j}", 1),
                DirectedEdge(f"h{i}_{(j + 1) % k}", -1),
                DirectedEdge(f"u{i}_{j}", -1),
            ),
            (a, b, a, b),
        )
        for i in range(m)
        for j in range(k)
    )
    return Complex2(vertices, tuple(edges), faces, source=f"parallelogram-torus:{m},{k}")


def polygon_ring(rng: random.Random, k: int) -> Complex2:
    """Cylinder variant: face i runs t_i, s_(i+1), a bottom path of random length backwards, s_i."""
    vertices = [f"u{i}" for i in range(k)] + [f"w{i}" for i in range(k)]
    edges = [Edge(f"t{i}", f"u{i}", f"u{(i + 1) % k}") for i in range(k)]
    edges += [Edge(f"s{i}", f"u{i}", f"w{i}") for i in range(k)]
    faces = []
    for i in range(k):
        length = rng.randint(1, 3)
        inner = [f"m{i}_{j}" for j in range(1, length)]
        vertices += inner
        path = [f"w{i}"] + inner + [f"w{(i + 1) % k}"]
        bottom = []
        for j, (x, y) in enumerate(zip(path, path[1:])):
            edges.append(Edge(f"b{i}_{j}", x, y))
            bottom.append(DirectedEdge(f"b{i}_{j}", -1))
        word = (
            [DirectedEdge(f"t{i}"), DirectedEdge(f"s{(i + 1) % k}")]
            + list(reversed(bottom))
            + [DirectedEdge(f"s{i}", -1)]
        )
        faces.append(Face(f"f{i}", tuple(word), uniform_angles(len(word))))
    return Complex2(tuple(vertices), tuple(edges), tuple(faces), source=f"polygon-ring:{k}")


# ======================================
# LINK GENERATORS / ORACLES
# ======================================

def random_link(rng: random.Random) -> LinkGraph:
    n_nodes = rng.randint(1, 8)
    nodes = tuple(LinkNode(f"n{i}", End.TAIL) for i in range(n_nodes))
    arcs = []
    for k in range(rng.randint(0, 10)):
        u, v = rng.choice(nodes), rng.choice(nodes)
        length = Angle(Fraction(rng.randint(1, 12), rng.randint(1, 6)))
        arcs.append(LinkArc(LinkKind.VERTEX, f"a{k:02d}", 0, u, v, length))
    return LinkGraph(LinkKind.VERTEX, "x", nodes, tuple(arcs))


def brute_force_girth(link: LinkGraph):
    """Smallest total length over arc subsets forming one connected 2-regular subgraph."""
    best = None
    arcs = link.arcs
    for size in range(1, len(arcs) + 1):
        for subset in combinations(arcs, size):
            degree: dict = {}
            for arc in subset:
                degree[arc.u] = degree.get(arc.u, 0) + 1
                degree[arc.v] = degree.get(arc.v, 0) + 1
            if any(d != 2 for d in degree.values()):
                continue
            graph = nx.MultiGraph()
            graph.add_edges_from((arc.u, arc.v) for arc in subset)
            if not nx.is_connected(graph):
                continue
            total = sum((a.length for a in subset), Angle(0))
            if best is None or total < best:
                best = total
    return best


# ======================================
# FIXTURES
# ======================================

@pytest.fixture
def rng() -> random.Random:
    return random.Random(SEED)


@pytest.fixture
def torus() -> Complex2:
    return build("torus")


@pytest.fixture
def heptadisk() -> Complex2:
    return build("heptadisk")


@pytest.fixture
def tetrahedron() -> Complex2:
    return build("tetrahedron")


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Isolate every test from ANGLED_* variables of the calling shell."""
    for key in list(os.environ):
        if key.startswith("ANGLED_"):
            monkeypatch.delenv(key)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
