"""
Validation and basic counts for Complex2 values.
Rules checked by validate (rule ids in brackets):
1. at least one vertex [empty]
2. identifiers unique within their sort [duplicate-identifier]
3. edges reference declared vertices [unknown-vertex]
4. boundary words reference declared edges [unknown-edge]
5. faces have at least 3 corners [face-too-short]
6. head of position i == tail of position i+1, cyclically [boundary-not-vertex-consistent]
7. one angle per corner [angle-count-mismatch]
8. every corner angle > 0 [non-positive-angle]
9. corner angles of an n-gon sum to (n-2)*pi exactly [angle-sum-violation]
10. the complex is connected [not-connected]

Every violation is reported, not just the first.
"""
from __future__ import annotations

import logging
from collections import Counter

import networkx as nx

from angled.errors import InvalidComplexError
from angled.models import ZERO, Angle, Complex2, polygon_angle_sum
from angled.schemas import ValidationReport, Violation

logger = logging.getLogger(__name__)


def validate(complex_: Complex2, check_angles: bool = True) -> ValidationReport:
    """
    Check every Complex2 invariant plus connectivity.

    check_angles=False skips rules 7-9: the structural check used for bare
    complexes handed to the angle solver.
    """
    violations: list[Violation] = []

    def report(rule: str, message: str, *cells: str) -> None:
        violations.append(Violation(rule=rule, message=message, cells=list(cells)))

    if not complex_.vertices:
        report("empty", "complex has no vertices")

    for kind, ids in (
        ("vertex", complex_.vertices),
        ("edge", [e.id for e in complex_.edges]),
        ("face", [f.id for f in complex_.faces]),
    ):
        for cell_id, count in Counter(ids).items():
            if count > 1:
                report("duplicate-identifier", f"{kind} {cell_id!r} declared {count} times", cell_id)

    vertex_set = complex_.vertex_set
    for edge in complex_.edges:
        for end in (edge.tail, edge.head):
            if end not in vertex_set:
                report("unknown-vertex", f"edge {edge.id!r} references unknown vertex {end!r}", edge.id, end)

    edge_index = complex_.edge_index
    for face in complex_.faces:
        unknown = [d.edge for d in face.boundary if d.edge not in edge_index]
        for edge_id in unknown:
            report("unknown-edge", f"face {face.id!r} references unknown edge {edge_id!r}", face.id, edge_id)

        n = face.size
        if n < 3:
            report("face-too-short", f"face {face.id!r} has {n} corners; at least 3 needed", face.id)

        if not unknown and n:
            for i, directed in enumerate(face.boundary):
                following = face.boundary[(i + 1) % n]
                if complex_.end(directed) != complex_.start(following):
                    report(
                        "boundary-not-vertex-consistent",
                        f"face {face.id!r}: {directed} ends at {complex_.end(directed)!r} "
                        f"but {following} starts at {complex_.start(following)!r}",
                        face.id, directed.edge, following.edge,
                    )

        if not check_angles:
            continue
        if len(face.angles) != n:
            report(
                "angle-count-mismatch",
                f"face {face.id!r} has {n} boundary edges but {len(face.angles)} angles",
                face.id,
            )
            continue
        for i, angle in enumerate(face.angles):
            if not angle.is_positive():
                report("non-positive-angle", f"face {face.id!r} corner {i} has angle {angle}", face.id)
        total = sum(face.angles, ZERO)
        if n >= 3 and total != polygon_angle_sum(n):
            report(
                "angle-sum-violation",
                f"face {face.id!r} angles sum to {total} pi, expected {polygon_angle_sum(n)} pi",
                face.id,
            )

    if complex_.vertices and not _is_connected(complex_):
        report("not-connected", "complex is not connected", *sorted(vertex_set))

    return ValidationReport(ok=not violations, violations=violations)


def _is_connected(complex_: Complex2) -> bool:
    graph = nx.MultiGraph()
    graph.add_nodes_from(complex_.vertices)
    graph.add_edges_from(
        (e.tail, e.head) for e in complex_.edges
        if e.tail in complex_.vertex_set and e.head in complex_.vertex_set
    )
    return nx.is_connected(graph)


def require_valid(complex_: Complex2, check_angles: bool = True) -> Complex2:
    """Guard for operations whose precondition is a valid complex."""
    report = validate(complex_, check_angles=check_angles)
    if not report.ok:
        raise InvalidComplexError(report)
    return complex_


def euler_characteristic(complex_: Complex2) -> int:
    return len(complex_.vertices) - len(complex_.edges) + len(complex_.faces)


def adjacency_census(complex_: Complex2, edge_id: str) -> int:
    """
    Occurrences of the edge, either orientation, across all boundary words.
    A face running over the edge twice counts twice.
    """
    return len(complex_.sides_of(edge_id))


def census_profile(complex_: Complex2) -> dict[int, int]:
    """How many edges have each adjacency count (0 / 2 everywhere is the closed-surface-like case)."""
    return dict(sorted(Counter(adjacency_census(complex_, e.id) for e in complex_.edges).items()))


def total_angle(complex_: Complex2) -> Angle:
    """Sum over all corners; equals sum over faces of (n_f - 2)*pi for valid complexes."""
    return sum((a for f in complex_.faces for a in f.angles), ZERO)
