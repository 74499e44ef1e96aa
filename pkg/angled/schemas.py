"""
Pydantic schemas for every report the toolkit emits.
Separation of concerns:
- models: in-memory cells and exact values used by the algorithms
- schemas: reports, transport and validation of report invariants

Angles serialize as exact "p/q" strings meaning (p/q)*pi.
JSON output is model_dump_json(indent=2), deterministic for fixed input.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Annotated, Optional

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PlainSerializer,
    PlainValidator,
    field_validator,
    model_validator,
)

from angled.models import (
    TWO_PI,
    ZERO,
    Angle,
    BreakpointKind,
    Decision,
    FreeFaceKind,
    LinkKind,
    Mode,
    SolveStatus,
    TerminalClass,
    TerminationReason,
    WeightClass,
)

# Dimensionless exact rational (LP multipliers), serialized as "p/q"
Rational = Annotated[
    Fraction,
    PlainValidator(lambda v: Fraction(v) if not isinstance(v, float) else Fraction(str(v))),
    PlainSerializer(str, return_type=str),
]


class Report(BaseModel):
    """Base for all reports: immutable once built."""
    model_config = ConfigDict(frozen=True)

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)


# =========================
# VALIDATION
# ========================

class Violation(Report):
    rule: str
    message: str
    cells: list[str] = Field(default_factory=list)


class ValidationReport(Report):
    ok: bool
    violations: list[Violation] = Field(default_factory=list)

    @model_validator(mode="after")
    def ok_iff_no_violations(self) -> "ValidationReport":
        if self.ok != (not self.violations):
            raise ValueError("ok must be true exactly when there are no violations")
        return self


# =========================
# LINKS
# ========================

class LinkArcOut(Report):
    id: str
    u: str
    v: str
    length: Angle


class LinkReport(Report):
    kind: LinkKind
    center: str
    nodes: list[str]
    arcs: list[LinkArcOut]
    euler_characteristic: int
    girth: Optional[Angle] = None
    girth_witness: list[str] = Field(default_factory=list)


# =========================
# CURVATURE
# ========================

class VertexCurvature(Report):
    vertex: str
    angle_sum: Angle
    chi_link: int
    kappa: Angle


class CurvatureReport(Report):
    """
    Per-vertex curvature with the total.
    gauss_bonnet_residual is present only for complexes flagged as disk diagrams.
    """
    vertices: list[VertexCurvature]
    total: Angle
    is_disk_diagram: bool = False
    gauss_bonnet_residual: Optional[Angle] = None

    @model_validator(mode="after")
    def total_is_sum(self) -> "CurvatureReport":
        total = sum((v.kappa for v in self.vertices), ZERO)
        if total != self.total:
            raise ValueError(f"total {self.total} differs from the sum of kappa {total}")
        if self.gauss_bonnet_residual is not None and not self.is_disk_diagram:
            raise ValueError("residual is only defined for disk diagrams")
        return self


# =========================
# WEIGHT TEST
# ========================

class VertexGirth(Report):
    vertex: str
    girth: Optional[Angle] = None
    margin: Optional[Angle] = None
    witness: list[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def margin_matches_girth(self) -> "VertexGirth":
        if self.girth is None:
            if self.margin is not None or self.witness:
                raise ValueError("a cycle-free link has neither margin nor witness")
        elif self.margin != self.girth - TWO_PI:
            raise ValueError("margin must equal girth - 2*pi")
        return self


class WeightTestReport(Report):
    classification: WeightClass
    vertices: list[VertexGirth]

    @model_validator(mode="after")
    def classification_matches_girths(self) -> "WeightTestReport":
        margins = [v.margin for v in self.vertices if v.margin is not None]
        if any(m < ZERO for m in margins):
            expected = WeightClass.FAILS
        elif any(m == ZERO for m in margins):
            expected = WeightClass.NONPOSITIVE_ONLY
        else:
            expected = WeightClass.NEGATIVE
        if expected != self.classification:
            raise ValueError(f"classification {self.classification.value} contradicts girths")
        return self

    def passes(self, mode: Mode) -> bool:
        if mode == Mode.NEGATIVE:
            return self.classification == WeightClass.NEGATIVE
        return self.classification != WeightClass.FAILS


# =========================
# COLLAPSE
# ========================

class FreeFaceOut(Report):
    kind: FreeFaceKind
    cell: str
    coface: str


class CollapseReport(Report):
    steps: list[FreeFaceOut]
    terminal_class: TerminalClass
    terminal_vertices: int
    terminal_edges: int
    terminal_faces: int
    weight_class: Optional[WeightClass] = None
    simply_connected: Optional[Decision] = None
    pi1_is_z: Optional[Decision] = None


# =========================
# HOMOTOPY
# ========================

class AbelianInvariants(Report):
    betti: int = Field(ge=0)
    torsion: list[int] = Field(default_factory=list)

    @field_validator("torsion")
    @classmethod
    def divisor_chain(cls, v: list[int]) -> list[int]:
        """
        Torsion coefficients:
        - every coefficient > 1
        - each divides the next (canonical invariant-factor form)
        """
        if any(t <= 1 for t in v):
            raise ValueError("torsion coefficients must exceed 1")
        for a, b in zip(v, v[1:]):
            if b % a:
                raise ValueError(f"torsion {a} does not divide {b}")
        return v

    def describe(self) -> str:
        parts = ["Z"] * min(self.betti, 1)
        if self.betti > 1:
            parts = [f"Z^{self.betti}"]
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


Letter = tuple[str, int]


class Presentation(Report):
    """Group presentation; relators are freely reduced words of (generator, +-1) letters."""
    generators: list[str]
    relators: list[list[Letter]] = Field(default_factory=list)

    @model_validator(mode="after")
    def relators_well_formed(self) -> "Presentation":
        known = set(self.generators)
        if len(known) != len(self.generators):
            raise ValueError("duplicate generator")
        for word in self.relators:
            for gen, exp in word:
                if gen not in known:
                    raise ValueError(f"relator uses unknown generator {gen!r}")
                if exp not in (1, -1):
                    raise ValueError("letter exponents must be +1 or -1")
            for (g1, e1), (g2, e2) in zip(word, word[1:]):
                if g1 == g2 and e1 == -e2:
                    raise ValueError("relators must be freely reduced")
        return self

    @staticmethod
    def format_word(word: list[Letter]) -> str:
        if not word:
            return "1"
        return " ".join(g if e > 0 else f"{g}^-1" for g, e in word)

    def describe(self) -> str:
        gens = ", ".join(self.generators)
        rels = ", ".join(self.format_word(w) for w in self.relators)
        return f"< {gens} | {rels} >"


class HomologyReport(Report):
    h1: AbelianInvariants
    presentation_abelianization: Optional[AbelianInvariants] = None


# =========================
# TRACING
# ========================

class SegmentOut(Report):
    face: str
    start: tuple[float, float]
    end: tuple[float, float]


class BreakpointOut(Report):
    """One junction of a traced path. distance is None when entry and exit lie in different link components."""
    kind: BreakpointKind
    cell: str
    parameter: Optional[float] = None
    entry: str
    exit: str
    distance: Optional[Angle] = None


class TraceReport(Report):
    face: str
    point: tuple[float, float]
    direction: tuple[float, float]
    segments: list[SegmentOut]
    breakpoints: list[BreakpointOut]
    termination: TerminationReason
    location: str
    straight: bool


class StraightnessVerdict(Report):
    ok: bool
    breakpoint: Optional[int] = None
    distance: Optional[Angle] = None
    message: str = ""


# =========================
# ANGLE SOLVER
# ========================

class CycleConstraint(Report):
    vertex: str
    corners: list[str]
    multiplier: Optional[Rational] = None


class InfeasibilityCertificate(Report):
    """
    Counting obstruction: cycles weighted by y demand 2*pi*sum(y); faces weighted
    by z supply sum(z_f * (n_f - 2) * pi). demand > supply rules out any assignment;
    demand == supply (tight) rules out strict slack.
    """
    cycles: list[CycleConstraint]
    face_multipliers: dict[str, Rational] = Field(default_factory=dict)
    demand: Angle
    supply: Angle
    tight: bool

    @model_validator(mode="after")
    def tight_iff_equal(self) -> "InfeasibilityCertificate":
        if self.tight != (self.demand == self.supply):
            raise ValueError("tight must hold exactly when demand equals supply")
        return self


class SolveOutcome(Report):
    status: SolveStatus
    mode: Mode
    angles: dict[str, Angle] = Field(default_factory=dict)
    margin: Optional[Angle] = None
    certificate: Optional[InfeasibilityCertificate] = None
    cycles: list[CycleConstraint] = Field(default_factory=list)
    rounds: int = 0

    @model_validator(mode="after")
    def status_payload(self) -> "SolveOutcome":
        if self.status == SolveStatus.FEASIBLE:
            if self.margin is None or not self.margin.is_positive():
                raise ValueError("a feasible outcome carries a positive margin")
        elif self.angles:
            raise ValueError("an infeasible outcome carries no angles")
        return self


# =========================
# BUILDERS
# ========================

_BUILDER_ARITY = {
    "polygon": 1,
    "grid": 2,
    "torus": 0,
    "cylinder": 1,
    "heptadisk": 0,
    "tetrahedron": 0,
    "presentation": 0,
    "surface": 1,
}
_BUILDER_MINIMUM = {"polygon": 3, "grid": 1, "cylinder": 3, "surface": 1}


class BuilderSpec(Report):
    """Parsed `name[:params]` builder request, e.g. `grid:3,4` or `presentation:a,b|a b a^-1 b^-1`."""
    name: str
    params: list[int] = Field(default_factory=list)
    generators: list[str] = Field(default_factory=list)
    relators: list[list[Letter]] = Field(default_factory=list)

    @model_validator(mode="after")
    def params_in_range(self) -> "BuilderSpec":
        if self.name not in _BUILDER_ARITY:
            raise ValueError(f"unknown builder {self.name!r}; known: {', '.join(sorted(_BUILDER_ARITY))}")
        arity = _BUILDER_ARITY[self.name]
        if len(self.params) != arity:
            raise ValueError(f"{self.name} takes {arity} integer parameter(s), got {len(self.params)}")
        minimum = _BUILDER_MINIMUM.get(self.name)
        if minimum is not None and any(p < minimum for p in self.params):
            raise ValueError(f"{self.name} parameters must be at least {minimum}")
        if self.name == "presentation":
            if not self.generators or not self.relators:
                raise ValueError("presentation needs generators and at least one relator")
            known = set(self.generators)
            if len(known) != len(self.generators):
                raise ValueError("duplicate generator")
            for word in self.relators:
                if len(word) < 3:
                    raise ValueError("each relator needs at least 3 letters to bound a face")
                unknown = {g for g, _ in word if g not in known}
                if unknown:
                    raise ValueError(f"relator uses unknown generator(s) {', '.join(sorted(unknown))}")
        return self

    def describe(self) -> str:
        if self.name == "presentation":
            rels = ", ".join(Presentation.format_word(w) for w in self.relators)
            return f"presentation:{','.join(self.generators)}|{rels}"
        if not self.params:
            return self.name
        return f"{self.name}:{','.join(str(p) for p in self.params)}"
