"""
Euclidean realization of faces and straight segmental-path tracing.

Planar geometry (floats, shapely) only locates crossings; every straightness
decision is made exactly in a link metric graph:
- crossing the interior of edge e at side (f, i) with entry angle alpha, the
  continuations are the other sides of e at beta = pi - alpha
- arriving at a vertex, the path leaves through the eccentricity witness of the
  entry direction in Lk(v), provided it is at distance >= pi

Conventions for a realized face with boundary d_0 .. d_{n-1}:
- P_0 = (0, 0), side i runs P_i -> P_{i+1} with heading phi_i,
  phi_0 = 0, phi_{i+1} = phi_i + (pi - theta_i): counterclockwise polygon
- corner i sits at P_{i+1}
- on an edge link arc, offsets are measured from the tail side (x stub)
- on a vertex link arc (corner i), offsets are measured clockwise from the
  ray back along side i
"""
from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy.optimize import linprog
from shapely.geometry import LinearRing, LineString, Point, Polygon

from angled.config import Settings, get_settings
from angled.errors import (
    FreeEdgeHit,
    InvalidStartError,
    MalformedPathError,
    PointNotInLinkError,
    RealizationError,
)
from angled.links import (
    FarSet,
    LinkGraph,
    LinkNode,
    MetricPoint,
    build_link,
    distance,
    eccentricity,
    link_of_edge_interior,
    points_at_distance_at_least,
)
from angled.models import (
    PI,
    Angle,
    BreakpointKind,
    Complex2,
    Corner,
    End,
    Side,
    TerminationReason,
)
from angled.schemas import BreakpointOut, SegmentOut, StraightnessVerdict, TraceReport

logger = logging.getLogger(__name__)

Vec = tuple[float, float]
TAU = 2 * math.pi


# ======================================
# REALIZATION
# ======================================

@dataclass(frozen=True)
class PolygonRealization:
    face: str
    points: tuple[Vec, ...]
    side_lengths: tuple[float, ...]
    headings: tuple[float, ...]
    closure_residual: float
    angle_deviation: float

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def scale(self) -> float:
        return float(sum(self.side_lengths))

    def vertex(self, j: int) -> Vec:
        return self.points[j % self.size]

    def side_point(self, i: int, u: float) -> Vec:
        (px, py), (qx, qy) = self.vertex(i), self.vertex(i + 1)
        return (px + u * (qx - px), py + u * (qy - py))

    @property
    def polygon(self) -> Polygon:
        return Polygon(self.points)


def _interior_angle(back: Vec, forward: Vec) -> float:
    """Counterclockwise angle from the forward ray to the back ray."""
    return (math.atan2(back[1], back[0]) - math.atan2(forward[1], forward[0])) % TAU


def realize_face(complex_: Complex2, face_id: str, settings: Optional[Settings] = None) -> PolygonRealization:
    """
    Planar polygon with the face's corner angles.

    Headings are forced by the angles. Side lengths: the projection of the
    all-ones vector onto the null space of the 2 x n closure system (equal
    lengths whenever they close), falling back to an LP feasibility search
    (lengths >= 1) when that projection is not positive.

    Failure modes:
    - no positive closure -> RealizationError with the heading data
    - closure residual above tolerance or self-intersecting outline -> RealizationError
    """
    settings = settings or get_settings()
    face = complex_.face(face_id)
    n = face.size
    if n < 3:
        raise RealizationError(face_id, f"needs at least 3 corners, has {n}")

    theta = [a.radians for a in face.angles]
    headings = [0.0]
    for i in range(n - 1):
        headings.append(headings[-1] + math.pi - theta[i])

    closure = np.array([[math.cos(h) for h in headings], [math.sin(h) for h in headings]])
    ones = np.ones(n)
    lengths = ones - np.linalg.pinv(closure) @ (closure @ ones)

    if lengths.min() <= settings.REALIZATION_TOLERANCE:
        logger.warning("face %s: equal-length closure not positive, searching with linprog", face_id)
        result = linprog(
            c=np.ones(n),
            A_eq=closure,
            b_eq=np.zeros(2),
            bounds=[(1.0, None)] * n,
            method="highs",
        )
        if not result.success:
            raise RealizationError(face_id, "closure system has no positive solution", headings)
        lengths = np.asarray(result.x)

    points = [(0.0, 0.0)]
    for length, heading in zip(lengths[:-1], headings[:-1]):
        x, y = points[-1]
        points.append((x + length * math.cos(heading), y + length * math.sin(heading)))

    perimeter = float(lengths.sum())
    residual = float(np.linalg.norm(closure @ lengths)) / perimeter
    if residual > settings.REALIZATION_TOLERANCE:
        raise RealizationError(face_id, f"closure residual {residual:.3e} above tolerance", headings)

    if not LinearRing(points).is_simple:
        raise RealizationError(face_id, "polygon outline self-intersects", headings)

    deviation = 0.0
    for i in range(n):
        corner = points[(i + 1) % n]
        prev, nxt = points[i], points[(i + 2) % n]
        back = (prev[0] - corner[0], prev[1] - corner[1])
        forward = (nxt[0] - corner[0], nxt[1] - corner[1])
        deviation = max(deviation, abs(_interior_angle(back, forward) - theta[i]))

    return PolygonRealization(
        face=face_id,
        points=tuple(points),
        side_lengths=tuple(float(x) for x in lengths),
        headings=tuple(headings),
        closure_residual=residual,
        angle_deviation=deviation,
    )


# ======================================
# STRAIGHT CONTINUATIONS
# ======================================

@dataclass(frozen=True, order=True)
class EdgeExit:
    side: Side
    beta: Angle


def straight_exits(
    complex_: Complex2,
    edge_id: str,
    entry: Side,
    alpha: Angle,
    link: Optional[LinkGraph] = None,
) -> list[EdgeExit]:
    """
    Continuations across the interior of an edge at distance >= pi from the entry.

    Raises FreeEdgeHit when the edge has a single adjacency.
    """
    link = link or link_of_edge_interior(complex_, edge_id)
    if len(link.arcs) == 1:
        raise FreeEdgeHit(edge_id)
    if not link.arcs:
        raise MalformedPathError(f"edge {edge_id!r} bounds no face and cannot be crossed")

    entry_id = str(entry)
    far = points_at_distance_at_least(link, MetricPoint.on(entry_id, alpha), PI)
    exits = []
    for interval in far.intervals:
        if interval.arc == entry_id:
            continue
        arc = link.arc(interval.arc)
        exits.append(EdgeExit(Side(arc.face, arc.index), interval.lo))
    return sorted(exits)


def straight_exits_at_vertex(
    complex_: Complex2,
    vertex: str,
    entry: MetricPoint,
    link: Optional[LinkGraph] = None,
) -> FarSet:
    """Every direction in Lk(v) at distance >= pi from the entry direction (may be empty)."""
    link = link or build_link(complex_, vertex)
    return points_at_distance_at_least(link, entry, PI)


# ======================================
# PATH TYPES
# ======================================

@dataclass(frozen=True)
class FacePoint:
    face: str
    x: float
    y: float


@dataclass(frozen=True)
class Segment:
    """
    Straight piece inside one face realization.
    start_direction: outgoing direction in the link of the start cell (None at the path start).
    end_direction: backward direction in the link of the end cell.
    """
    face: str
    start: Vec
    end: Vec
    start_direction: Optional[MetricPoint]
    end_direction: Optional[MetricPoint]


@dataclass(frozen=True)
class StraightnessWitness:
    entry: MetricPoint
    exit: MetricPoint
    distance: Optional[Angle]  # None: different link components


@dataclass(frozen=True)
class Breakpoint:
    """Junction between segment k and k+1, on an edge interior or at a vertex."""
    kind: BreakpointKind
    cell: str
    parameter: Optional[float]
    witness: StraightnessWitness


@dataclass(frozen=True)
class SegmentalPath:
    start: FacePoint
    direction: Vec
    segments: tuple[Segment, ...]
    breakpoints: tuple[Breakpoint, ...]


@dataclass(frozen=True)
class Termination:
    reason: TerminationReason
    location: str


@dataclass
class _Cursor:
    """Where the next segment starts."""
    face: str
    origin: Vec
    heading: float
    start_direction: Optional[MetricPoint]
    along: Optional[tuple[str, End]] = None  # travel along this edge from the given end


@dataclass(frozen=True)
class _Hit:
    distance: float
    side: int
    u: float
    vertex_index: Optional[int]


# ======================================
# TRACER
# ======================================

@dataclass
class Tracer:
    """
    Straight-path tracer over one complex. Realizations and links are cached.

    Stopping rule: the first of SelfIntersect (a transversal crossing with an
    earlier segment, or a second visit to a vertex), EdgeRevisit (an edge
    reached a second time), FreeEdgeHit (no straight continuation) or MaxSteps.
    """
    complex: Complex2
    settings: Settings = field(default_factory=get_settings)
    _realizations: dict = field(default_factory=dict, repr=False)
    _vertex_links: dict = field(default_factory=dict, repr=False)
    _edge_links: dict = field(default_factory=dict, repr=False)

    # ---- caches ----

    def realization(self, face_id: str) -> PolygonRealization:
        if face_id not in self._realizations:
            self._realizations[face_id] = realize_face(self.complex, face_id, self.settings)
        return self._realizations[face_id]

    def vertex_link(self, vertex: str) -> LinkGraph:
        if vertex not in self._vertex_links:
            self._vertex_links[vertex] = build_link(self.complex, vertex)
        return self._vertex_links[vertex]

    def edge_link(self, edge_id: str) -> LinkGraph:
        if edge_id not in self._edge_links:
            self._edge_links[edge_id] = link_of_edge_interior(self.complex, edge_id)
        return self._edge_links[edge_id]

    def _exact(self, radians: float) -> Angle:
        return Angle.from_radians(radians, self.settings.ANGLE_DENOMINATOR_LIMIT)

    # ---- planar steps ----

    def _cast(self, face_id: str, origin: Vec, heading: float) -> _Hit:
        real = self.realization(face_id)
        snap = self.settings.SNAP_TOLERANCE * real.scale
        dx, dy = math.cos(heading), math.sin(heading)
        best: Optional[_Hit] = None
        for i in range(real.size):
            (px, py), (qx, qy) = real.vertex(i), real.vertex(i + 1)
            sx, sy = qx - px, qy - py
            denom = dx * sy - dy * sx
            if abs(denom) < 1e-15:
                continue
            wx, wy = px - origin[0], py - origin[1]
            t = (wx * sy - wy * sx) / denom
            u = (wx * dy - wy * dx) / denom
            tol_u = snap / math.hypot(sx, sy)
            if t <= snap or u < -tol_u or u > 1 + tol_u:
                continue
            if best is None or t < best.distance:
                vertex_index = None
                if u <= tol_u:
                    vertex_index = i
                elif u >= 1 - tol_u:
                    vertex_index = (i + 1) % real.size
                best = _Hit(t, i, min(max(u, 0.0), 1.0), vertex_index)
        if best is None:
            raise RealizationError(face_id, "ray does not leave the polygon")
        return best

    def _edge_entry(self, face_id: str, side_index: int, heading: float) -> MetricPoint:
        """Backward direction at an edge crossing, as a point of the edge link."""
        real = self.realization(face_id)
        directed = self.complex.face(face_id).boundary[side_index]
        phi = (heading + math.pi - real.headings[side_index]) % TAU
        alpha = self._exact(math.pi - phi if directed.sign > 0 else phi)
        limit = self.settings.ANGLE_DENOMINATOR_LIMIT
        alpha = min(max(alpha, Angle(Fraction(1, limit))), PI - Angle(Fraction(1, limit)))
        return MetricPoint.on(str(Side(face_id, side_index)), alpha)

    def _vertex_entry(self, face_id: str, point_index: int, heading: float) -> tuple[str, MetricPoint]:
        """Backward direction at a corner hit, as a point of the vertex link."""
        real = self.realization(face_id)
        face = self.complex.face(face_id)
        k = (point_index - 1) % face.size
        vertex = self.complex.end(face.boundary[k])
        theta = face.angles[k]
        back = real.headings[k] + math.pi
        t = (back - (heading + math.pi)) % TAU
        if t > theta.radians + (TAU - theta.radians) / 2:
            t = 0.0
        offset = min(max(self._exact(t), Angle(0)), theta)
        link = self.vertex_link(vertex)
        return vertex, link.point_on(link.arc(str(Corner(face_id, k))), offset.fraction)

    def _leave_edge(self, side: Side, parameter: float, beta: Angle, start_direction: MetricPoint) -> _Cursor:
        real = self.realization(side.face)
        directed = self.complex.directed_at(side)
        u = parameter if directed.sign > 0 else 1.0 - parameter
        phi = (PI - beta).radians if directed.sign > 0 else beta.radians
        return _Cursor(side.face, real.side_point(side.index, u), real.headings[side.index] + phi, start_direction)

    def _leave_vertex(self, link: LinkGraph, exit_point: MetricPoint) -> _Cursor:
        if exit_point.node is not None:
            return _Cursor("", (0.0, 0.0), 0.0, exit_point, along=(exit_point.node.edge, exit_point.node.end))
        arc = link.arc(exit_point.arc)
        real = self.realization(arc.face)
        heading = real.headings[arc.index] + math.pi - exit_point.offset.radians
        return _Cursor(arc.face, real.vertex(arc.index + 1), heading, exit_point)

    def _crosses_earlier(self, segment: Segment, earlier: list[Segment]) -> bool:
        if math.dist(segment.start, segment.end) == 0.0:
            return False
        line = LineString([segment.start, segment.end])
        for other in earlier:
            if other.face != segment.face or math.dist(other.start, other.end) == 0.0:
                continue
            if line.crosses(LineString([other.start, other.end])):
                return True
        return False

    # ---- main loop ----

    def trace(self, start: FacePoint, direction: Vec, max_steps: Optional[int] = None) -> tuple[SegmentalPath, Termination]:
        """
        Extend a straight path segment by segment from an interior face point.

        Flow:
        1. cast a ray (or follow an edge) to the next edge crossing / vertex
        2. stop on a transversal self-crossing
        3. at an edge: stop on a revisit, else take the first continuation in (face, index) order
        4. at a vertex: stop on a revisit, else leave through the eccentricity
           witness when it is at distance >= pi (FreeEdgeHit otherwise)
        """
        max_steps = max_steps if max_steps is not None else self.settings.DEFAULT_MAX_STEPS
        real = self.realization(start.face)
        if not real.polygon.contains(Point(start.x, start.y)):
            raise InvalidStartError(f"({start.x}, {start.y}) is not interior to face {start.face!r}")
        norm = math.hypot(*direction)
        if norm == 0.0:
            raise InvalidStartError("direction must be nonzero")

        cursor = _Cursor(start.face, (start.x, start.y), math.atan2(direction[1], direction[0]), None)
        segments: list[Segment] = []
        breakpoints: list[Breakpoint] = []
        reached_edges: set[str] = set()
        visited_vertices: set[str] = set()

        def finish(reason: TerminationReason, location: str):
            logger.debug("trace stops: %s at %s after %d segments", reason.value, location, len(segments))
            path = SegmentalPath(
                start, (direction[0] / norm, direction[1] / norm), tuple(segments), tuple(breakpoints)
            )
            return path, Termination(reason, location)

        while True:
            if len(segments) >= max_steps:
                return finish(TerminationReason.MAX_STEPS, f"after {len(segments)} segments")

            # -- along an edge: vertex to vertex --
            if cursor.along is not None:
                edge_id, end = cursor.along
                edge = self.complex.edge(edge_id)
                sides = sorted(self.complex.sides_of(edge_id))
                here = edge.tail if end == End.TAIL else edge.head
                if not sides:
                    return finish(TerminationReason.FREE_EDGE_HIT, f"edge {edge_id}")
                side = sides[0]
                real = self.realization(side.face)
                positive = self.complex.directed_at(side).sign > 0
                tail_pos = real.vertex(side.index if positive else side.index + 1)
                head_pos = real.vertex(side.index + 1 if positive else side.index)
                arrival_end = End.HEAD if end == End.TAIL else End.TAIL
                start_pos, end_pos = (tail_pos, head_pos) if end == End.TAIL else (head_pos, tail_pos)
                segment = Segment(
                    side.face, start_pos, end_pos, cursor.start_direction,
                    MetricPoint.at(LinkNode(edge_id, arrival_end)),
                )
                segments.append(segment)
                logger.debug("segment %d along edge %s from %s", len(segments), edge_id, here)
                if edge_id in reached_edges:
                    return finish(TerminationReason.EDGE_REVISIT, f"edge {edge_id}")
                reached_edges.add(edge_id)
                vertex = edge.head if end == End.TAIL else edge.tail
                arrival = ("vertex", vertex, segment.end_direction, None)
            # -- ray through a face --
            else:
                hit = self._cast(cursor.face, cursor.origin, cursor.heading)
                real = self.realization(cursor.face)
                if hit.vertex_index is not None:
                    end_pos = real.vertex(hit.vertex_index)
                    vertex, entry = self._vertex_entry(cursor.face, hit.vertex_index, cursor.heading)
                    arrival = ("vertex", vertex, entry, None)
                else:
                    end_pos = real.side_point(hit.side, hit.u)
                    entry = self._edge_entry(cursor.face, hit.side, cursor.heading)
                    arrival = ("edge", Side(cursor.face, hit.side), entry, hit.u)
                segment = Segment(cursor.face, cursor.origin, end_pos, cursor.start_direction, entry)
                crossing = self._crosses_earlier(segment, segments)
                segments.append(segment)
                logger.debug("segment %d in face %s -> %s", len(segments), cursor.face, arrival[0])
                if crossing:
                    return finish(TerminationReason.SELF_INTERSECT, f"face {cursor.face}")

            kind, where, entry, u = arrival
            if kind == "edge":
                side = where
                directed = self.complex.directed_at(side)
                edge_id = directed.edge
                parameter = u if directed.sign > 0 else 1.0 - u
                if edge_id in reached_edges:
                    return finish(TerminationReason.EDGE_REVISIT, f"edge {edge_id}")
                reached_edges.add(edge_id)
                link = self.edge_link(edge_id)
                try:
                    exits = straight_exits(self.complex, edge_id, side, entry.offset, link)
                except FreeEdgeHit:
                    return finish(TerminationReason.FREE_EDGE_HIT, f"edge {edge_id}")
                chosen = exits[0]
                exit_point = MetricPoint.on(str(chosen.side), chosen.beta)
                breakpoints.append(Breakpoint(
                    BreakpointKind.EDGE, edge_id, parameter,
                    StraightnessWitness(entry, exit_point, distance(link, entry, exit_point)),
                ))
                cursor = self._leave_edge(chosen.side, parameter, chosen.beta, exit_point)
            else:
                vertex = where
                if vertex in visited_vertices:
                    return finish(TerminationReason.SELF_INTERSECT, f"vertex {vertex}")
                visited_vertices.add(vertex)
                link = self.vertex_link(vertex)
                far = eccentricity(link, entry)
                if far.value is not None and far.value < PI:
                    return finish(TerminationReason.FREE_EDGE_HIT, f"vertex {vertex}")
                breakpoints.append(Breakpoint(
                    BreakpointKind.VERTEX, vertex, None,
                    StraightnessWitness(entry, far.witness, far.value),
                ))
                cursor = self._leave_vertex(link, far.witness)


def trace_straight(
    complex_: Complex2,
    start: FacePoint,
    direction: Vec,
    max_steps: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> tuple[SegmentalPath, Termination]:
    return Tracer(complex_, settings or get_settings()).trace(start, direction, max_steps)


# ======================================
# VERIFICATION
# ======================================

def verify_straight(complex_: Complex2, path: SegmentalPath) -> StraightnessVerdict:
    """
    Recompute every junction's link distance from the recorded directions.

    Only junctions between two segments need a witness; the two path endpoints do not.
    """
    if not path.segments:
        raise MalformedPathError("path has no segments")
    if len(path.breakpoints) != len(path.segments) - 1:
        raise MalformedPathError(
            f"{len(path.segments)} segments need {len(path.segments) - 1} breakpoints, "
            f"got {len(path.breakpoints)}"
        )
    for k, point in enumerate(path.breakpoints):
        entry = path.segments[k].end_direction
        exit_ = path.segments[k + 1].start_direction
        if entry is None or exit_ is None:
            raise MalformedPathError(f"breakpoint {k} lacks an entry or exit direction")
        if point.kind == BreakpointKind.VERTEX:
            link = build_link(complex_, point.cell)
        elif point.kind == BreakpointKind.EDGE:
            link = link_of_edge_interior(complex_, point.cell)
        else:
            raise MalformedPathError(f"breakpoint {k} is not on an edge or a vertex")
        try:
            gap = distance(link, entry, exit_)
        except PointNotInLinkError as exc:
            raise MalformedPathError(f"breakpoint {k}: {exc.detail}") from None
        if gap is not None and gap < PI:
            return StraightnessVerdict(
                ok=False,
                breakpoint=k,
                distance=gap,
                message=f"{point.kind.value} {point.cell}: {entry} and {exit_} are {gap} pi apart",
            )
    return StraightnessVerdict(ok=True)


# ======================================
# SAMPLING / REPORTING
# ======================================

def random_start(complex_: Complex2, rng: random.Random, tracer: Optional[Tracer] = None) -> tuple[FacePoint, Vec]:
    """Uniform-ish interior point of a random face and a random unit direction."""
    tracer = tracer or Tracer(complex_)
    face_id = rng.choice(sorted(f.id for f in complex_.faces))
    polygon = tracer.realization(face_id).polygon
    minx, miny, maxx, maxy = polygon.bounds
    for _ in range(1000):
        x, y = rng.uniform(minx, maxx), rng.uniform(miny, maxy)
        if polygon.contains(Point(x, y)):
            break
    else:
        x, y = polygon.representative_point().coords[0]
    angle = rng.uniform(0.0, TAU)
    return FacePoint(face_id, x, y), (math.cos(angle), math.sin(angle))


def _rounded(p: Vec) -> Vec:
    return (round(p[0], 12), round(p[1], 12))


def trace_report(path: SegmentalPath, termination: Termination, verdict: StraightnessVerdict) -> TraceReport:
    return TraceReport(
        face=path.start.face,
        point=_rounded((path.start.x, path.start.y)),
        direction=_rounded(path.direction),
        segments=[SegmentOut(face=s.face, start=_rounded(s.start), end=_rounded(s.end)) for s in path.segments],
        breakpoints=[
            BreakpointOut(
                kind=b.kind,
                cell=b.cell,
                parameter=None if b.parameter is None else round(b.parameter, 12),
                entry=str(b.witness.entry),
                exit=str(b.witness.exit),
                distance=b.witness.distance,
            )
            for b in path.breakpoints
        ],
        termination=termination.reason,
        location=termination.location,
        straight=verdict.ok,
    )
