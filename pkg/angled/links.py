"""
Vertex links and edge-interior links as weighted metric multigraphs.

Conventions:
- Vertex link of v: one node per edge-end at v (a loop contributes both ends),
  one arc per corner at v with length = corner angle. The arc of corner i of a
  face runs from the end of boundary position i at the corner to the start of
  position i+1.
- Edge-interior link of e: nodes x (toward the tail) and y (toward the head),
  one arc of length pi per occurrence of e in a boundary word.
- A MetricPoint is a node or (arc id, offset) with the offset measured from
  the arc's u node, strictly inside the arc.
- Distances are exact Fractions of pi; None means "different component".

Multigraph shortest paths run on networkx MultiGraphs keyed by arc id.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Optional

import networkx as nx

from angled.errors import PointNotInLinkError
from angled.models import PI, Angle, Complex2, End, LinkKind
from angled.schemas import LinkArcOut, LinkReport

logger = logging.getLogger(__name__)

_END_RANK = {End.TAIL: 0, End.X: 0, End.HEAD: 1, End.Y: 1}


# ======================================
# TYPES
# ======================================

@dataclass(frozen=True)
class LinkNode:
    edge: str
    end: End

    @property
    def key(self) -> tuple[str, int]:
        return (self.edge, _END_RANK[self.end])

    def __str__(self) -> str:
        return f"{self.edge}_{self.end.value}"


@dataclass(frozen=True)
class LinkArc:
    """An arc of a link; provenance is (face, index): a corner or a side."""
    kind: LinkKind
    face: str
    index: int
    u: LinkNode
    v: LinkNode
    length: Angle

    @property
    def id(self) -> str:
        sep = "#" if self.kind == LinkKind.VERTEX else "@"
        return f"{self.face}{sep}{self.index}"

    @property
    def key(self) -> tuple[str, int]:
        return (self.face, self.index)

    @property
    def is_loop(self) -> bool:
        return self.u == self.v


@dataclass(frozen=True)
class MetricPoint:
    node: Optional[LinkNode] = None
    arc: Optional[str] = None
    offset: Optional[Angle] = None

    def __post_init__(self):
        if (self.node is None) == (self.arc is None):
            raise ValueError("a metric point is either a node or a point on an arc")
        if self.arc is not None and self.offset is None:
            raise ValueError("a point on an arc needs an offset")

    @classmethod
    def at(cls, node: LinkNode) -> "MetricPoint":
        return cls(node=node)

    @classmethod
    def on(cls, arc_id: str, offset: Angle) -> "MetricPoint":
        return cls(arc=arc_id, offset=offset)

    @property
    def is_node(self) -> bool:
        return self.node is not None

    def __str__(self) -> str:
        if self.node is not None:
            return str(self.node)
        return f"{self.arc}+{self.offset}"


@dataclass(frozen=True)
class CycleWitness:
    length: Angle
    arcs: tuple[str, ...]


@dataclass(frozen=True)
class Eccentricity:
    value: Optional[Angle]  # None: a point in another component (infinite)
    witness: MetricPoint


@dataclass(frozen=True)
class ArcInterval:
    """Closed sub-interval [lo, hi] of an arc, offsets from its u node."""
    arc: str
    lo: Angle
    hi: Angle

    def __str__(self) -> str:
        if self.lo == self.hi:
            return f"{self.arc}+{self.lo}"
        return f"{self.arc}+[{self.lo},{self.hi}]"


@dataclass(frozen=True)
class FarSet:
    """Canonical union of nodes and arc intervals (endpoint-only pieces become nodes)."""
    nodes: tuple[LinkNode, ...]
    intervals: tuple[ArcInterval, ...]

    @property
    def is_empty(self) -> bool:
        return not self.nodes and not self.intervals

    def __str__(self) -> str:
        parts = [str(n) for n in self.nodes] + [str(i) for i in self.intervals]
        return "{" + ", ".join(parts) + "}"


@dataclass(frozen=True)
class LinkGraph:
    kind: LinkKind
    center: str
    nodes: tuple[LinkNode, ...]
    arcs: tuple[LinkArc, ...]

    @cached_property
    def arc_index(self) -> dict[str, LinkArc]:
        return {a.id: a for a in self.arcs}

    @cached_property
    def graph(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.nodes)
        for arc in self.arcs:
            graph.add_edge(arc.u, arc.v, key=arc.id, length=arc.length.fraction, order=arc.key)
        return graph

    def arc(self, arc_id: str) -> LinkArc:
        try:
            return self.arc_index[arc_id]
        except KeyError:
            raise PointNotInLinkError(f"arc {arc_id!r} is not in the link of {self.center!r}") from None

    def canonical(self, point: MetricPoint) -> MetricPoint:
        """Validate membership; offsets at an arc end become that node."""
        if point.node is not None:
            if point.node not in self.graph:
                raise PointNotInLinkError(f"node {point.node} is not in the link of {self.center!r}")
            return point
        arc = self.arc(point.arc)
        if point.offset < Angle(0) or point.offset > arc.length:
            raise PointNotInLinkError(
                f"offset {point.offset} outside arc {arc.id} of length {arc.length}"
            )
        return self.point_on(arc, point.offset.fraction)

    def point_on(self, arc: LinkArc, t: Fraction) -> MetricPoint:
        if t == 0:
            return MetricPoint.at(arc.u)
        if t == arc.length.fraction:
            return MetricPoint.at(arc.v)
        return MetricPoint.on(arc.id, Angle(t))

    @property
    def euler_characteristic(self) -> int:
        return len(self.nodes) - len(self.arcs)

    @property
    def total_length(self) -> Angle:
        return sum((a.length for a in self.arcs), Angle(0))

    def sorted_arcs(self) -> list[LinkArc]:
        return sorted(self.arcs, key=lambda a: a.key)

    def to_networkx(self) -> nx.MultiGraph:
        return self.graph.copy()


# ======================================
# CONSTRUCTION
# ======================================

def build_link(complex_: Complex2, vertex: str) -> LinkGraph:
    """Link of a vertex: edge-ends as nodes, corners at the vertex as arcs."""
    complex_.require_vertex(vertex)
    nodes = []
    for edge in complex_.incident_edges(vertex):
        if edge.tail == vertex:
            nodes.append(LinkNode(edge.id, End.TAIL))
        if edge.head == vertex:
            nodes.append(LinkNode(edge.id, End.HEAD))

    arcs = []
    for corner in complex_.corners_at(vertex):
        face = complex_.face(corner.face)
        here = face.boundary[corner.index]
        following = face.boundary[(corner.index + 1) % face.size]
        u = LinkNode(here.edge, End.HEAD if here.sign > 0 else End.TAIL)
        v = LinkNode(following.edge, End.TAIL if following.sign > 0 else End.HEAD)
        arcs.append(LinkArc(LinkKind.VERTEX, corner.face, corner.index, u, v, face.angles[corner.index]))

    return LinkGraph(
        LinkKind.VERTEX,
        vertex,
        tuple(sorted(nodes, key=lambda n: n.key)),
        tuple(sorted(arcs, key=lambda a: a.key)),
    )


def link_of_edge_interior(complex_: Complex2, edge_id: str) -> LinkGraph:
    """Link of an interior point of an edge: x and y joined by one pi-arc per adjacency."""
    complex_.edge(edge_id)
    x, y = LinkNode(edge_id, End.X), LinkNode(edge_id, End.Y)
    arcs = tuple(
        LinkArc(LinkKind.EDGE, side.face, side.index, x, y, PI)
        for side in sorted(complex_.sides_of(edge_id))
    )
    return LinkGraph(LinkKind.EDGE, edge_id, (x, y), arcs)


# ======================================
# METRIC
# ======================================

def _arc_weight(u, v, data) -> Fraction:
    return min(attrs["length"] for attrs in data.values())


def _weight_without(arc_id: str) -> Callable:
    def weight(u, v, data):
        lengths = [attrs["length"] for key, attrs in data.items() if key != arc_id]
        return min(lengths) if lengths else None
    return weight


def _node_distances(link: LinkGraph, point: MetricPoint) -> dict[LinkNode, Fraction]:
    """Exact distances from a point to every reachable node."""
    point = link.canonical(point)
    graph = link.graph
    if point.node is not None:
        return dict(nx.single_source_dijkstra_path_length(graph, point.node, weight=_arc_weight))

    arc = link.arc(point.arc)
    s = point.offset.fraction
    w = arc.length.fraction
    from_u = nx.single_source_dijkstra_path_length(graph, arc.u, weight=_arc_weight)
    from_v = nx.single_source_dijkstra_path_length(graph, arc.v, weight=_arc_weight)
    return {node: min(s + from_u[node], w - s + from_v[node]) for node in from_u}


def distance(link: LinkGraph, p: MetricPoint, q: MetricPoint) -> Optional[Angle]:
    """Shortest-path distance in the metric graph; None when p and q are in different components."""
    p = link.canonical(p)
    q = link.canonical(q)
    dist = _node_distances(link, p)
    if q.node is not None:
        return Angle(dist[q.node]) if q.node in dist else None

    arc = link.arc(q.arc)
    t = q.offset.fraction
    candidates = []
    if arc.u in dist:
        candidates.append(dist[arc.u] + t)
        candidates.append(dist[arc.v] + arc.length.fraction - t)
    if p.arc == q.arc:
        candidates.append(abs(p.offset.fraction - t))
    return Angle(min(candidates)) if candidates else None


def _cheapest_arc(link: LinkGraph, a: LinkNode, b: LinkNode, excluded: str) -> str:
    data = link.graph.get_edge_data(a, b)
    options = [(attrs["length"], attrs["order"], key) for key, attrs in data.items() if key != excluded]
    return min(options)[2]


def shortest_cycle(link: LinkGraph) -> Optional[CycleWitness]:
    """
    Weighted girth with a witness.

    For each arc (u, v, w) in identifier order: candidate = w for a loop, else
    w + shortest u->v path avoiding that arc. First strictly smaller candidate wins.
    """
    best: Optional[tuple[Fraction, tuple[str, ...]]] = None
    for arc in link.sorted_arcs():
        w = arc.length.fraction
        if arc.is_loop:
            candidate, rest = w, ()
        else:
            try:
                length, path = nx.single_source_dijkstra(
                    link.graph, arc.u, arc.v, weight=_weight_without(arc.id)
                )
            except nx.NetworkXNoPath:
                continue
            candidate = w + length
            hops = [_cheapest_arc(link, a, b, arc.id) for a, b in zip(path, path[1:])]
            rest = tuple(reversed(hops))
        if best is None or candidate < best[0]:
            best = (candidate, (arc.id,) + rest)

    if best is None:
        return None
    return CycleWitness(Angle(best[0]), best[1])


# ======================================
# ECCENTRICITY / FAR POINTS
# ======================================

Line = tuple[int, Fraction]  # value(t) = slope * t + intercept, slope in {+1, -1}


def _arc_pieces(arc: LinkArc, dist: dict[LinkNode, Fraction], point: MetricPoint):
    """
    Distance from the point to the arc position t, as min-of-lines pieces over [lo, hi].
    None when the arc lies in another component.
    """
    if arc.u not in dist:
        return None
    w = arc.length.fraction
    base: list[Line] = [(1, dist[arc.u]), (-1, dist[arc.v] + w)]
    if point.arc == arc.id:
        s = point.offset.fraction
        return [(Fraction(0), s, base + [(-1, s)]), (s, w, base + [(1, -s)])]
    return [(Fraction(0), w, base)]


def _evaluate(lines: list[Line], t: Fraction) -> Fraction:
    return min(slope * t + intercept for slope, intercept in lines)


def _max_of_min_lines(lines: list[Line], lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Max over [lo, hi] of a min of +-1 slope lines: (value, smallest maximizer)."""
    candidates = {lo, hi}
    rising = [c for s, c in lines if s > 0]
    falling = [c for s, c in lines if s < 0]
    for a in rising:
        for b in falling:
            t = (b - a) / 2
            if lo < t < hi:
                candidates.add(t)
    best_t = min(candidates, key=lambda t: (-_evaluate(lines, t), t))
    return _evaluate(lines, best_t), best_t


def eccentricity(link: LinkGraph, point: MetricPoint) -> Eccentricity:
    """
    Supremum of distance(point, q) over every metric point q, with a witness.

    Arc interiors are included; ties go to the smallest (arc, offset) and an
    arc end is reported as its node. A point in another component makes the
    eccentricity infinite (value None).
    """
    point = link.canonical(point)
    dist = _node_distances(link, point)

    unreachable = [n for n in link.nodes if n not in dist]
    if unreachable:
        return Eccentricity(None, MetricPoint.at(unreachable[0]))

    best_value, best_point = Fraction(0), point
    for arc in link.sorted_arcs():
        for lo, hi, lines in _arc_pieces(arc, dist, point):
            value, t = _max_of_min_lines(lines, lo, hi)
            if value > best_value:
                best_value, best_point = value, link.point_on(arc, t)
    return Eccentricity(Angle(best_value), best_point)


def points_at_distance_at_least(link: LinkGraph, point: MetricPoint, radius: Angle) -> FarSet:
    """All metric points at distance >= radius from the point, canonically represented."""
    point = link.canonical(point)
    dist = _node_distances(link, point)
    r = radius.fraction

    nodes = tuple(n for n in link.nodes if n not in dist or dist[n] >= r)
    intervals: list[ArcInterval] = []
    for arc in link.sorted_arcs():
        w = arc.length.fraction
        pieces = _arc_pieces(arc, dist, point)
        if pieces is None:
            intervals.append(ArcInterval(arc.id, Angle(0), arc.length))
            continue

        spans: list[list[Fraction]] = []
        for lo, hi, lines in pieces:
            a, b = lo, hi
            for slope, intercept in lines:
                if slope > 0:
                    a = max(a, r - intercept)
                else:
                    b = min(b, intercept - r)
            if a <= b:
                if spans and spans[-1][1] == a:
                    spans[-1][1] = b
                else:
                    spans.append([a, b])
        for a, b in spans:
            if a == b and a in (0, w):
                continue
            intervals.append(ArcInterval(arc.id, Angle(a), Angle(b)))
    return FarSet(nodes, tuple(intervals))


# ======================================
# EXPORT
# ======================================

def link_report(link: LinkGraph) -> LinkReport:
    girth = shortest_cycle(link)
    return LinkReport(
        kind=link.kind,
        center=link.center,
        nodes=[str(n) for n in link.nodes],
        arcs=[LinkArcOut(id=a.id, u=str(a.u), v=str(a.v), length=a.length) for a in link.arcs],
        euler_characteristic=link.euler_characteristic,
        girth=girth.length if girth else None,
        girth_witness=list(girth.arcs) if girth else [],
    )


def link_to_dot(link: LinkGraph) -> str:
    """DOT text for inspection (arc labels: id and length in units of pi)."""
    title = f"Lk({link.center})"
    lines = [f'graph "{title}" {{']
    lines.extend(f'  "{n}";' for n in link.nodes)
    for arc in link.arcs:
        lines.append(f'  "{arc.u}" -- "{arc.v}" [label="{arc.id} {arc.length}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
