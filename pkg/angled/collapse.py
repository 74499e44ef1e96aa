"""
Free faces, elementary collapses and full greedy collapse.
Rules:
1. vertex-in-edge: the vertex ends exactly one edge, that edge is not a loop,
   and no corner sits at the vertex
2. edge-in-face: the edge occurs exactly once in all boundary words
3. an elementary collapse removes the free cell together with its coface
4. collapse_all takes the first free face in (kind, cell, coface) order until none is left

Terminal classes: Point (one vertex, nothing else), Cycle (no faces, connected,
every vertex of degree 2), Graph (no faces otherwise), Stuck2Complex (faces left).
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Optional

import networkx as nx

from angled.core import adjacency_census, require_valid
from angled.errors import StaleFreeFaceError
from angled.models import Complex2, Decision, FreeFaceKind, TerminalClass, WeightClass
from angled.schemas import CollapseReport, FreeFaceOut
from angled.weight_test import classify

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FreeFace:
    kind: FreeFaceKind
    cell: str
    coface: str

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.kind.value, self.cell, self.coface)

    def __str__(self) -> str:
        return f"{self.kind.value}({self.cell}, {self.coface})"


@dataclass(frozen=True)
class CollapseTrace:
    steps: tuple[FreeFace, ...]
    terminal: Complex2
    terminal_class: TerminalClass


# ===============================
# FREE FACES
# ==============================

def free_faces(complex_: Complex2) -> list[FreeFace]:
    found = []
    for edge in complex_.edges:
        sides = complex_.sides_of(edge.id)
        if len(sides) == 1:
            found.append(FreeFace(FreeFaceKind.EDGE_IN_FACE, edge.id, sides[0].face))

    for vertex in complex_.vertices:
        incident = complex_.incident_edges(vertex)
        if len(incident) != 1 or incident[0].is_loop:
            continue
        if complex_.corners_at(vertex):
            continue
        found.append(FreeFace(FreeFaceKind.VERTEX_IN_EDGE, vertex, incident[0].id))

    return sorted(found, key=lambda ff: ff.key)


def elementary_collapse(complex_: Complex2, free_face: FreeFace) -> Complex2:
    """Remove a free cell and its coface; surviving corner angles are untouched."""
    if free_face not in free_faces(complex_):
        raise StaleFreeFaceError(free_face)
    if free_face.kind == FreeFaceKind.EDGE_IN_FACE:
        return complex_.without(edges=[free_face.cell], faces=[free_face.coface])
    return complex_.without(vertices=[free_face.cell], edges=[free_face.coface])


# ===============================
# FULL COLLAPSE
# ==============================

def classify_terminal(complex_: Complex2) -> TerminalClass:
    if complex_.faces:
        return TerminalClass.STUCK
    if len(complex_.vertices) == 1 and not complex_.edges:
        return TerminalClass.POINT
    graph = nx.MultiGraph()
    graph.add_nodes_from(complex_.vertices)
    graph.add_edges_from((e.tail, e.head) for e in complex_.edges)
    if (
        complex_.vertices
        and nx.is_connected(graph)
        and all(complex_.degree(v) == 2 for v in complex_.vertices)
    ):
        return TerminalClass.CYCLE
    return TerminalClass.GRAPH


def collapse_all(complex_: Complex2, rng: Optional[random.Random] = None) -> CollapseTrace:
    """
    Greedy collapse until no free face remains.

    With rng given, the free face is picked at random instead of first in order
    (used to check order independence of the terminal class).
    """
    require_valid(complex_)
    steps = []
    current = complex_
    while True:
        candidates = free_faces(current)
        if not candidates:
            break
        chosen = candidates[0] if rng is None else rng.choice(candidates)
        logger.debug("collapse %s", chosen)
        current = elementary_collapse(current, chosen)
        steps.append(chosen)

    terminal_class = classify_terminal(current)
    logger.debug("collapse finished after %d steps: %s", len(steps), terminal_class.value)
    return CollapseTrace(tuple(steps), current, terminal_class)


# ===============================
# DECISIONS
# ==============================

def decide_simply_connected(weight_class: WeightClass, terminal_class: TerminalClass) -> Decision:
    """
    Inside the weight-test-passing class, collapsibility decides simple connectivity:
    collapsible implies simply connected, and a simply connected complex of this
    class always collapses.
    """
    if weight_class == WeightClass.FAILS:
        return Decision.NOT_APPLICABLE
    return Decision.YES if terminal_class == TerminalClass.POINT else Decision.NO


def decide_pi1_is_z(weight_class: WeightClass, terminal_class: TerminalClass) -> Decision:
    """
    Inside the negatively curved class, fundamental group Z is equivalent to
    collapsing onto a cycle. Outside that class the question is left open.
    """
    if weight_class != WeightClass.NEGATIVE:
        return Decision.NOT_APPLICABLE
    return Decision.YES if terminal_class == TerminalClass.CYCLE else Decision.NO


def simply_connected_decision(complex_: Complex2) -> Decision:
    return decide_simply_connected(classify(complex_).classification, collapse_all(complex_).terminal_class)


def pi1_is_z_decision(complex_: Complex2) -> Decision:
    return decide_pi1_is_z(classify(complex_).classification, collapse_all(complex_).terminal_class)


def collapse_report(complex_: Complex2, decide: bool = False) -> CollapseReport:
    trace = collapse_all(complex_)
    weight_class = simply = pi1 = None
    if decide:
        weight_class = classify(complex_).classification
        simply = decide_simply_connected(weight_class, trace.terminal_class)
        pi1 = decide_pi1_is_z(weight_class, trace.terminal_class)
    return CollapseReport(
        steps=[FreeFaceOut(kind=s.kind, cell=s.cell, coface=s.coface) for s in trace.steps],
        terminal_class=trace.terminal_class,
        terminal_vertices=len(trace.terminal.vertices),
        terminal_edges=len(trace.terminal.edges),
        terminal_faces=len(trace.terminal.faces),
        weight_class=weight_class,
        simply_connected=simply,
        pi1_is_z=pi1,
    )


def census_is_closed(complex_: Complex2) -> bool:
    """Every edge has 0 or 2 adjacencies."""
    return all(adjacency_census(complex_, e.id) in (0, 2) for e in complex_.edges)
