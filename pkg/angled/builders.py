"""
Deterministic constructors for the canonical complexes.

    polygon:n        one n-gon disk, corners (n-2)/n
    grid:m,k         m x k square grid disk, corners 1/2
    torus            one vertex, loops a, b, face a+ b+ a- b-
    cylinder:k       k squares in a ring
    heptadisk        7 triangles (corners 1/3) around a centre vertex, disk
    tetrahedron      boundary of the 3-simplex, corners 1/3
    presentation:G|R presentation complex, equal corners per face
    surface:g        closed genus-g surface as one 4g-gon

Relator tokens are `x`, `x^-1` or `x^k` (k a nonzero integer), separated by spaces.
"""
from __future__ import annotations

import logging
import re
from itertools import combinations

from pydantic import ValidationError

from angled.a2c import uniform_angles
from angled.errors import BuilderSpecError
from angled.models import Angle, Complex2, DirectedEdge, Edge, Face
from angled.schemas import BuilderSpec, Letter

logger = logging.getLogger(__name__)

_LETTER = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^([+-]?\d+))?$")
_SPEC = re.compile(r"^([a-z]+)(?::(.*))?$")

HALF = Angle("1/2")
THIRD = Angle("1/3")


# ======================================
# SPEC PARSING
# ======================================

def _parse_letters(text: str) -> list[Letter]:
    word: list[Letter] = []
    for token in text.split():
        match = _LETTER.match(token)
        if match is None:
            raise BuilderSpecError(f"bad relator token {token!r} (expected x, x^-1 or x^k)")
        power = int(match.group(2)) if match.group(2) is not None else 1
        if power == 0:
            raise BuilderSpecError(f"zero exponent in relator token {token!r}")
        sign = 1 if power > 0 else -1
        word.extend([(match.group(1), sign)] * abs(power))
    return word


def parse_spec(text: str) -> BuilderSpec:
    match = _SPEC.match(text.strip())
    if match is None:
        raise BuilderSpecError(f"cannot parse builder spec {text!r}")
    name, rest = match.group(1), match.group(2)

    params: list[int] = []
    generators: list[str] = []
    relators: list[list[Letter]] = []
    if name == "presentation":
        if rest is None or "|" not in rest:
            raise BuilderSpecError("presentation spec is presentation:<gens>|<relators>")
        gens, rels = rest.split("|", 1)
        generators = [g.strip() for g in gens.split(",") if g.strip()]
        relators = [_parse_letters(r) for r in rels.split(",") if r.strip()]
    elif rest:
        try:
            params = [int(p) for p in rest.split(",")]
        except ValueError:
            raise BuilderSpecError(f"{name} parameters must be integers, got {rest!r}") from None

    try:
        return BuilderSpec(name=name, params=params, generators=generators, relators=relators)
    except ValidationError as exc:
        message = "; ".join(err["msg"].removeprefix("Value error, ") for err in exc.errors())
        raise BuilderSpecError(message) from None


# ======================================
# BUILDERS
# ======================================

def _face(face_id: str, word: list[tuple[str, int]], angles=None) -> Face:
    boundary = tuple(DirectedEdge(e, s) for e, s in word)
    if angles is None:
        angles = uniform_angles(len(boundary))
    return Face(face_id, boundary, tuple(angles))


def polygon(n: int) -> Complex2:
    vertices = tuple(f"v{i}" for i in range(n))
    edges = tuple(Edge(f"e{i}", f"v{i}", f"v{(i + 1) % n}") for i in range(n))
    face = _face("f", [(f"e{i}", 1) for i in range(n)])
    return Complex2(vertices, edges, (face,), is_disk_diagram=True, source=f"polygon:{n}")


def grid(m: int, k: int) -> Complex2:
    vertices = tuple(f"p{i}_{j}" for i in range(m + 1) for j in range(k + 1))
    edges = [Edge(f"h{i}_{j}", f"p{i}_{j}", f"p{i + 1}_{j}") for i in range(m) for j in range(k + 1)]
    edges += [Edge(f"u{i}_{j}", f"p{i}_{j}", f"p{i}_{j + 1}") for i in range(m + 1) for j in range(k)]
    faces = tuple(
        _face(
            f"f{i}_{j}",
            [(f"h{i}_{j}", 1), (f"u{i + 1}_{j}", 1), (f"h{i}_{j + 1}", -1), (f"u{i}_{j}", -1)],
            [HALF] * 4,
        )
        for i in range(m)
        for j in range(k)
    )
    return Complex2(vertices, tuple(edges), faces, is_disk_diagram=True, source=f"grid:{m},{k}")


def torus() -> Complex2:
    edges = (Edge("a", "v", "v"), Edge("b", "v", "v"))
    face = _face("f", [("a", 1), ("b", 1), ("a", -1), ("b", -1)], [HALF] * 4)
    return Complex2(("v",), edges, (face,), source="torus")


def cylinder(k: int) -> Complex2:
    vertices = tuple(f"u{i}" for i in range(k)) + tuple(f"w{i}" for i in range(k))
    edges = [Edge(f"t{i}", f"u{i}", f"u{(i + 1) % k}") for i in range(k)]
    edges += [Edge(f"b{i}", f"w{i}", f"w{(i + 1) % k}") for i in range(k)]
    edges += [Edge(f"s{i}", f"u{i}", f"w{i}") for i in range(k)]
    faces = tuple(
        _face(f"f{i}", [(f"t{i}", 1), (f"s{(i + 1) % k}", 1), (f"b{i}", -1), (f"s{i}", -1)], [HALF] * 4)
        for i in range(k)
    )
    return Complex2(vertices, tuple(edges), faces, source=f"cylinder:{k}")


def heptadisk() -> Complex2:
    n = 7
    vertices = ("c",) + tuple(f"p{i}" for i in range(n))
    edges = [Edge(f"r{i}", "c", f"p{i}") for i in range(n)]
    edges += [Edge(f"q{i}", f"p{i}", f"p{(i + 1) % n}") for i in range(n)]
    faces = tuple(
        _face(f"t{i}", [(f"r{i}", 1), (f"q{i}", 1), (f"r{(i + 1) % n}", -1)], [THIRD] * 3)
        for i in range(n)
    )
    return Complex2(vertices, tuple(edges), faces, is_disk_diagram=True, source="heptadisk")


def tetrahedron() -> Complex2:
    vertices = tuple(f"v{i}" for i in range(4))
    edges = tuple(Edge(f"e{i}{j}", f"v{i}", f"v{j}") for i, j in combinations(range(4), 2))
    faces = tuple(
        _face(f"f{i}{j}{k}", [(f"e{i}{j}", 1), (f"e{j}{k}", 1), (f"e{i}{k}", -1)], [THIRD] * 3)
        for i, j, k in combinations(range(4), 3)
    )
    return Complex2(vertices, edges, faces, source="tetrahedron")


def presentation(generators: list[str], relators: list[list[Letter]]) -> Complex2:
    edges = tuple(Edge(g, "v", "v") for g in generators)
    faces = tuple(_face(f"r{i}", word) for i, word in enumerate(relators))
    spec = BuilderSpec(name="presentation", generators=generators, relators=relators)
    return Complex2(("v",), edges, faces, source=spec.describe())


def surface(genus: int) -> Complex2:
    edges = []
    word = []
    for i in range(1, genus + 1):
        a, b = f"a{i}", f"b{i}"
        edges += [Edge(a, "v", "v"), Edge(b, "v", "v")]
        word += [(a, 1), (b, 1), (a, -1), (b, -1)]
    return Complex2(("v",), tuple(edges), (_face("f", word),), source=f"surface:{genus}")


def build(spec: "str | BuilderSpec") -> Complex2:
    """Complex for a builder spec (string or parsed). Raises BuilderSpecError on bad input."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    p = spec.params
    if spec.name == "polygon":
        complex_ = polygon(p[0])
    elif spec.name == "grid":
        complex_ = grid(p[0], p[1])
    elif spec.name == "torus":
        complex_ = torus()
    elif spec.name == "cylinder":
        complex_ = cylinder(p[0])
    elif spec.name == "heptadisk":
        complex_ = heptadisk()
    elif spec.name == "tetrahedron":
        complex_ = tetrahedron()
    elif spec.name == "presentation":
        complex_ = presentation(spec.generators, spec.relators)
    else:
        complex_ = surface(p[0])

    logger.debug(
        "built %s: %d vertices, %d edges, %d faces",
        spec.describe(), len(complex_.vertices), len(complex_.edges), len(complex_.faces),
    )
    return complex_
