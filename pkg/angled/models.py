"""
Core value types for angled 2-complexes.
Design principles:
1. Every length, angle and curvature is an Angle: an exact rational multiple of pi
2. Cells are frozen dataclasses; a Complex2 is never mutated, operations return new values
3. Enums enforce the finite vocabularies (classifications, kinds, reasons)
4. Identifier order is the only tie-breaker anywhere downstream
"""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property, total_ordering
from typing import Any, Iterable, Mapping

from pydantic_core import core_schema

from angled.errors import UnknownCellError

# ======================================
# ENUMS - Finite vocabularies
# ======================================


class Mode(str, enum.Enum):
    """Curvature class requested by check / solve-angles."""
    NONPOSITIVE = "nonpositive"
    NEGATIVE = "negative"


class WeightClass(str, enum.Enum):
    """
    Outcome of the weight test.
    - NEGATIVE: every link cycle is longer than 2*pi (or there are none)
    - NONPOSITIVE_ONLY: every link cycle is at least 2*pi, some exactly 2*pi
    - FAILS: some link cycle is shorter than 2*pi
    """
    NEGATIVE = "Negative"
    NONPOSITIVE_ONLY = "NonpositiveOnly"
    FAILS = "Fails"


class End(str, enum.Enum):
    """
    Which end of an edge a link node stands for.
    TAIL/HEAD for vertex links; X (toward the tail) / Y (toward the head)
    for the two stubs of an edge-interior link.
    """
    TAIL = "tail"
    HEAD = "head"
    X = "x"
    Y = "y"


class LinkKind(str, enum.Enum):
    VERTEX = "vertex"
    EDGE = "edge"


class FreeFaceKind(str, enum.Enum):
    EDGE_IN_FACE = "edge-in-face"
    VERTEX_IN_EDGE = "vertex-in-edge"


class TerminalClass(str, enum.Enum):
    POINT = "Point"
    CYCLE = "Cycle"
    GRAPH = "Graph"
    STUCK = "Stuck2Complex"


class Decision(str, enum.Enum):
    YES = "Yes"
    NO = "No"
    NOT_APPLICABLE = "NotApplicable"


class TerminationReason(str, enum.Enum):
    SELF_INTERSECT = "SelfIntersect"
    EDGE_REVISIT = "EdgeRevisit"
    FREE_EDGE_HIT = "FreeEdgeHit"
    MAX_STEPS = "MaxSteps"


class BreakpointKind(str, enum.Enum):
    INTERIOR = "interior"
    EDGE = "edge"
    VERTEX = "vertex"


class SolveStatus(str, enum.Enum):
    FEASIBLE = "Feasible"
    INFEASIBLE = "Infeasible"


# ======================================
# ANGLE - exact rational multiple of pi
# ======================================

_ANGLE_TOKEN = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


@total_ordering
class Angle:
    """
    (p/q) * pi with p/q stored in lowest terms (Fraction keeps the sign on p).

    Arithmetic is closed under +, - and scaling by rationals; Angle / Angle
    gives the dimensionless Fraction ratio. Floats are refused on purpose:
    use Angle.from_radians when a planar computation has to come back.
    """
    __slots__ = ("_value",)

    def __init__(self, value: "int | Fraction | str | Angle" = 0):
        if isinstance(value, Angle):
            value = value._value
        elif isinstance(value, str):
            value = Angle._parse_fraction(value)
        elif isinstance(value, float) or isinstance(value, bool):
            raise TypeError("Angle needs an exact value; use Angle.from_radians for floats")
        object.__setattr__(self, "_value", Fraction(value))

    def __setattr__(self, name, value):
        raise AttributeError("Angle is immutable")

    # ---- construction helpers ----

    @staticmethod
    def _parse_fraction(token: str) -> Fraction:
        match = _ANGLE_TOKEN.match(token.strip())
        if match is None:
            raise ValueError(f"not an exact angle token: {token!r} (expected p or p/q)")
        numerator = int(match.group(1))
        denominator = int(match.group(2)) if match.group(2) is not None else 1
        if denominator == 0:
            raise ValueError(f"zero denominator in angle {token!r}")
        return Fraction(numerator, denominator)

    @classmethod
    def parse(cls, token: str) -> "Angle":
        return cls(cls._parse_fraction(token))

    @classmethod
    def from_radians(cls, radians: float, limit: int) -> "Angle":
        """Nearest rational multiple of pi with denominator <= limit."""
        return cls(Fraction(radians / math.pi).limit_denominator(limit))

    # ---- views ----

    @property
    def fraction(self) -> Fraction:
        """Coefficient of pi."""
        return self._value

    @property
    def radians(self) -> float:
        return float(self._value) * math.pi

    def is_positive(self) -> bool:
        return self._value > 0

    # ---- arithmetic ----

    def __add__(self, other: "Angle") -> "Angle":
        if not isinstance(other, Angle):
            return NotImplemented
        return Angle(self._value + other._value)

    def __sub__(self, other: "Angle") -> "Angle":
        if not isinstance(other, Angle):
            return NotImplemented
        return Angle(self._value - other._value)

    def __mul__(self, factor: "int | Fraction") -> "Angle":
        if isinstance(factor, (Angle, float, bool)):
            return NotImplemented
        return Angle(self._value * Fraction(factor))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Angle):
            return self._value / other._value
        if isinstance(other, (float, bool)):
            return NotImplemented
        return Angle(self._value / Fraction(other))

    def __neg__(self) -> "Angle":
        return Angle(-self._value)

    def __abs__(self) -> "Angle":
        return Angle(abs(self._value))

    # ---- comparison ----

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, Angle):
            return self._value == other._value
        return NotImplemented

    def __lt__(self, other: "Angle") -> bool:
        if not isinstance(other, Angle):
            return NotImplemented
        return self._value < other._value

    def __hash__(self) -> int:
        return hash(("Angle", self._value))

    def __str__(self) -> str:
        return str(self._value)

    def __repr__(self) -> str:
        return f"Angle('{self._value}')"

    # ---- pydantic integration: serialized as the exact "p/q" string ----

    @classmethod
    def _coerce(cls, value: Any) -> "Angle":
        if isinstance(value, Angle):
            return value
        if isinstance(value, (int, Fraction, str)) and not isinstance(value, bool):
            return cls(value)
        raise ValueError(f"cannot interpret {value!r} as an exact angle")

    @classmethod
    def __get_pydantic_core_schema__(cls, source_type, handler):
        return core_schema.no_info_plain_validator_function(
            cls._coerce,
            serialization=core_schema.plain_serializer_function_ser_schema(str),
        )

    @classmethod
    def __get_pydantic_json_schema__(cls, schema, handler):
        return {
            "type": "string",
            "pattern": r"^-?\d+(/\d+)?$",
            "description": "exact multiple of pi written p/q (meaning (p/q)*pi)",
        }


ZERO = Angle(0)
PI = Angle(1)
TWO_PI = Angle(2)


def polygon_angle_sum(n: int) -> Angle:
    """Corner angles of an n-gon must add up to (n-2)*pi."""
    return Angle(n - 2)


# ======================================
# CELLS
# ======================================

@dataclass(frozen=True, order=True)
class Edge:
    id: str
    tail: str
    head: str

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


@dataclass(frozen=True, order=True)
class DirectedEdge:
    """An edge traversed forwards (sign +1) or backwards (sign -1)."""
    edge: str
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"DirectedEdge sign must be +1 or -1, got {self.sign}")

    @classmethod
    def parse(cls, token: str) -> "DirectedEdge":
        if len(token) < 2 or token[-1] not in "+-":
            raise ValueError(f"edge reference must end in + or -: {token!r}")
        return cls(token[:-1], 1 if token[-1] == "+" else -1)

    def inverse(self) -> "DirectedEdge":
        return DirectedEdge(self.edge, -self.sign)

    def __str__(self) -> str:
        return f"{self.edge}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True, order=True)
class Corner:
    """Corner `index` of a face: between boundary positions index and index+1."""
    face: str
    index: int

    def __str__(self) -> str:
        return f"{self.face}#{self.index}"


@dataclass(frozen=True, order=True)
class Side:
    """Position `index` of a face boundary word: one adjacency of an edge with a face."""
    face: str
    index: int

    def __str__(self) -> str:
        return f"{self.face}@{self.index}"


@dataclass(frozen=True)
class Face:
    id: str
    boundary: tuple[DirectedEdge, ...]
    angles: tuple[Angle, ...]

    @property
    def size(self) -> int:
        return len(self.boundary)

    @property
    def word(self) -> str:
        return " ".join(str(d) for d in self.boundary)

    def corners(self) -> list[Corner]:
        return [Corner(self.id, i) for i in range(self.size)]


# ======================================
# COMPLEX
# ======================================

@dataclass(frozen=True)
class Complex2:
    """
    Finite combinatorial 2-complex with corner angles.

    Faces are attached along boundary words. Corner i of a face sits at the
    head of boundary position i (where position i+1 starts). Construction does
    not validate: core.validate reports every violated invariant.
    """
    vertices: tuple[str, ...] = ()
    edges: tuple[Edge, ...] = ()
    faces: tuple[Face, ...] = ()
    is_disk_diagram: bool = False
    source: str = field(default="", compare=False)

    # ---- lookups ----

    @cached_property
    def edge_index(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def face_index(self) -> dict[str, Face]:
        return {f.id: f for f in self.faces}

    @cached_property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.vertices)

    def edge(self, edge_id: str) -> Edge:
        try:
            return self.edge_index[edge_id]
        except KeyError:
            raise UnknownCellError("edge", edge_id) from None

    def face(self, face_id: str) -> Face:
        try:
            return self.face_index[face_id]
        except KeyError:
            raise UnknownCellError("face", face_id) from None

    def require_vertex(self, vertex: str) -> str:
        if vertex not in self.vertex_set:
            raise UnknownCellError("vertex", vertex)
        return vertex

    @property
    def cell_count(self) -> int:
        return len(self.vertices) + len(self.edges) + len(self.faces)

    # ---- incidence ----

    def start(self, directed: DirectedEdge) -> str:
        edge = self.edge(directed.edge)
        return edge.tail if directed.sign > 0 else edge.head

    def end(self, directed: DirectedEdge) -> str:
        edge = self.edge(directed.edge)
        return edge.head if directed.sign > 0 else edge.tail

    def corner_vertex(self, corner: Corner) -> str:
        face = self.face(corner.face)
        return self.end(face.boundary[corner.index])

    def angle_at(self, corner: Corner) -> Angle:
        return self.face(corner.face).angles[corner.index]

    @cached_property
    def _corners_by_vertex(self) -> dict[str, list[Corner]]:
        table: dict[str, list[Corner]] = {}
        for face in self.faces:
            for i, directed in enumerate(face.boundary):
                edge = self.edge_index.get(directed.edge)
                if edge is None:
                    continue
                vertex = edge.head if directed.sign > 0 else edge.tail
                table.setdefault(vertex, []).append(Corner(face.id, i))
        return table

    def corners_at(self, vertex: str) -> list[Corner]:
        self.require_vertex(vertex)
        return list(self._corners_by_vertex.get(vertex, []))

    def incident_edges(self, vertex: str) -> list[Edge]:
        self.require_vertex(vertex)
        return sorted(
            (e for e in self.edges if vertex in (e.tail, e.head)),
            key=lambda e: e.id,
        )

    def degree(self, vertex: str) -> int:
        """Number of edge-ends at the vertex (a loop counts twice)."""
        return sum((e.tail == vertex) + (e.head == vertex) for e in self.incident_edges(vertex))

    @cached_property
    def _sides_by_edge(self) -> dict[str, list[Side]]:
        table: dict[str, list[Side]] = {}
        for face in self.faces:
            for i, directed in enumerate(face.boundary):
                table.setdefault(directed.edge, []).append(Side(face.id, i))
        return table

    def sides_of(self, edge_id: str) -> list[Side]:
        """Every occurrence of the edge in a face boundary, in face order."""
        self.edge(edge_id)
        return list(self._sides_by_edge.get(edge_id, []))

    def directed_at(self, side: Side) -> DirectedEdge:
        return self.face(side.face).boundary[side.index]

    # ---- derived complexes ----

    def with_angles(self, angles: Mapping[Corner, Angle]) -> "Complex2":
        """Replace the corner angles named in `angles`; other corners keep theirs."""
        faces = []
        for face in self.faces:
            new = tuple(angles.get(Corner(face.id, i), a) for i, a in enumerate(face.angles))
            faces.append(replace(face, angles=new))
        return replace(self, faces=tuple(faces))

    def without(
        self,
        vertices: Iterable[str] = (),
        edges: Iterable[str] = (),
        faces: Iterable[str] = (),
    ) -> "Complex2":
        drop_v, drop_e, drop_f = set(vertices), set(edges), set(faces)
        return replace(
            self,
            vertices=tuple(v for v in self.vertices if v not in drop_v),
            edges=tuple(e for e in self.edges if e.id not in drop_e),
            faces=tuple(f for f in self.faces if f.id not in drop_f),
        )
