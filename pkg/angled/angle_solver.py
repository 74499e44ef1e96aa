"""
Angle assignment search by exact LP with a link-girth separation oracle.

Variables (units of pi): one per corner, plus the uniform slack t (t <= 1).
    face:   sum of the face's corners        = n - 2
    floor:  corner - t                       >= 0
    cycle:  sum of the cycle's corners       >= 2       (nonpositive)
            sum of the cycle's corners - t   >= 2       (negative)
    maximize t

Each round solves the LP, rebuilds the links with the candidate angles and
adds the shortest cycle of every vertex whose length is below the bound.
Feasible when no cycle is violated and t > 0.

On failure a counting certificate is extracted from two further LPs over the
collected cycles (y per cycle, z per face):
    maximize 2*sum(y) - sum((n_f - 2) * z_f)
    s.t. for each corner c of face f: sum of y over cycles through c <= z_f,
         0 <= y <= 1, z >= 0
then the largest sum(y) attaining that optimum. demand = 2*sum(y) pi and
supply = sum((n_f - 2) * z_f) pi; demand > supply excludes every assignment,
demand == supply (tight) excludes every strictly positive slack.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from angled.config import Settings, get_settings
from angled.core import require_valid
from angled.errors import AngledError, SeparationLimitError
from angled.links import build_link, shortest_cycle
from angled.models import Angle, Complex2, Corner, Mode, SolveStatus
from angled.schemas import CycleConstraint, InfeasibilityCertificate, SolveOutcome
from angled.simplex import LinearProgram, LPStatus, Sense, solve

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinkCycle:
    vertex: str
    corners: tuple[Corner, ...]

    @property
    def key(self) -> tuple[Corner, ...]:
        return tuple(sorted(self.corners))


# ======================================
# MAIN LP
# ======================================

@dataclass
class _AngleProgram:
    lp: LinearProgram
    corner_var: dict[Corner, int]
    t_plus: int
    t_minus: int


def _angle_program(complex_: Complex2, cycles: list[LinkCycle], mode: Mode) -> _AngleProgram:
    lp = LinearProgram(n=0)
    corner_var = {}
    for face in complex_.faces:
        for corner in face.corners():
            corner_var[corner] = lp.variable(str(corner))
    t_plus, t_minus = lp.variable("t+"), lp.variable("t-")

    for face in complex_.faces:
        lp.add({corner_var[c]: 1 for c in face.corners()}, Sense.EQ, face.size - 2)
    for var in corner_var.values():
        lp.add({var: 1, t_plus: -1, t_minus: 1}, Sense.GE, 0)
    lp.add({t_plus: 1, t_minus: -1}, Sense.LE, 1)

    for cycle in cycles:
        coeffs: dict[int, int] = dict(Counter(corner_var[c] for c in cycle.corners))
        if mode == Mode.NEGATIVE:
            coeffs[t_plus] = coeffs.get(t_plus, 0) - 1
            coeffs[t_minus] = coeffs.get(t_minus, 0) + 1
        lp.add(coeffs, Sense.GE, 2)

    lp.maximize({t_plus: 1, t_minus: -1})
    return _AngleProgram(lp, corner_var, t_plus, t_minus)


def _violated_cycles(candidate: Complex2, mode: Mode, slack: Fraction) -> list[LinkCycle]:
    """Shortest link cycle of each vertex whose length is below the bound."""
    bound = Angle(2) + (Angle(slack) if mode == Mode.NEGATIVE else Angle(0))
    found = []
    for vertex in candidate.vertices:
        link = build_link(candidate, vertex)
        witness = shortest_cycle(link)
        if witness is None or witness.length >= bound:
            continue
        corners = tuple(Corner(link.arc(a).face, link.arc(a).index) for a in witness.arcs)
        found.append(LinkCycle(vertex, corners))
    return found


# ======================================
# CERTIFICATE
# ======================================

def _certificate(complex_: Complex2, cycles: list[LinkCycle]) -> InfeasibilityCertificate:
    lp = LinearProgram(n=0)
    y = [lp.variable(f"y{k}") for k in range(len(cycles))]
    z = {face.id: lp.variable(f"z_{face.id}") for face in complex_.faces}
    size = {face.id: face.size for face in complex_.faces}

    through: dict[Corner, Counter] = {}
    for k, cycle in enumerate(cycles):
        for corner in cycle.corners:
            through.setdefault(corner, Counter())[y[k]] += 1
    for corner, counts in sorted(through.items()):
        coeffs = dict(counts)
        coeffs[z[corner.face]] = -1
        lp.add(coeffs, Sense.LE, 0)
    for var in y:
        lp.add({var: 1}, Sense.LE, 1)

    gap = {var: 2 for var in y}
    gap.update({z[f]: -(size[f] - 2) for f in z})
    lp.maximize(gap)
    first = solve(lp)
    if first.status != LPStatus.OPTIMAL:
        raise AngledError(f"certificate search failed: {first.status.value}")

    lp.add(gap, Sense.EQ, first.value)
    lp.maximize({var: 1 for var in y})
    second = solve(lp)
    if second.status != LPStatus.OPTIMAL:
        raise AngledError(f"certificate search failed: {second.status.value}")

    x = second.x
    demand = Angle(2 * sum((x[var] for var in y), Fraction(0)))
    supply = Angle(sum((x[z[f]] * (size[f] - 2) for f in z), Fraction(0)))
    constraints = [
        CycleConstraint(vertex=c.vertex, corners=[str(k) for k in c.corners], multiplier=x[y[k]])
        for k, c in enumerate(cycles)
    ]
    return InfeasibilityCertificate(
        cycles=constraints,
        face_multipliers={f: x[z[f]] for f in sorted(z) if x[z[f]] != 0},
        demand=demand,
        supply=supply,
        tight=demand == supply,
    )


# ======================================
# SOLVE
# ======================================

def solve_angles(complex_: Complex2, mode: Mode, settings: Optional[Settings] = None) -> SolveOutcome:
    """
    Search for corner angles satisfying the weight test in the given mode.

    Angles present on the input are ignored; only the cell structure matters.
    """
    settings = settings or get_settings()
    require_valid(complex_, check_angles=False)

    cycles: list[LinkCycle] = []
    seen: set[tuple[Corner, ...]] = set()
    rounds = 0

    def infeasible() -> SolveOutcome:
        certificate = _certificate(complex_, cycles)
        logger.info(
            "no %s assignment: demand %s pi, supply %s pi", mode.value, certificate.demand, certificate.supply
        )
        return SolveOutcome(
            status=SolveStatus.INFEASIBLE,
            mode=mode,
            certificate=certificate,
            cycles=[CycleConstraint(vertex=c.vertex, corners=[str(k) for k in c.corners]) for c in cycles],
            rounds=rounds,
        )

    while rounds < settings.SOLVER_MAX_ROUNDS:
        rounds += 1
        program = _angle_program(complex_, cycles, mode)
        result = solve(program.lp)
        if result.status != LPStatus.OPTIMAL:
            logger.debug("round %d: LP %s with %d cycles", rounds, result.status.value, len(cycles))
            return infeasible()

        slack = result.x[program.t_plus] - result.x[program.t_minus]
        logger.debug("round %d: t = %s with %d cycles", rounds, slack, len(cycles))
        if slack <= 0:
            return infeasible()

        angles = {c: Angle(result.x[v]) for c, v in program.corner_var.items()}
        candidate = complex_.with_angles(angles)
        fresh = [c for c in _violated_cycles(candidate, mode, slack) if c.key not in seen]
        if not fresh:
            return SolveOutcome(
                status=SolveStatus.FEASIBLE,
                mode=mode,
                angles={str(c): a for c, a in sorted(angles.items())},
                margin=Angle(slack),
                cycles=[CycleConstraint(vertex=c.vertex, corners=[str(k) for k in c.corners]) for c in cycles],
                rounds=rounds,
            )
        for cycle in fresh:
            seen.add(cycle.key)
            cycles.append(cycle)

    logger.warning("angle search stopped at the round limit (%d)", settings.SOLVER_MAX_ROUNDS)
    raise SeparationLimitError(rounds)


def apply_solution(complex_: Complex2, outcome: SolveOutcome) -> Complex2:
    """The input complex carrying the solved angles."""
    if outcome.status != SolveStatus.FEASIBLE:
        raise AngledError("an infeasible outcome has no angles to apply")
    mapping = {}
    for face in complex_.faces:
        for corner in face.corners():
            mapping[corner] = outcome.angles[str(corner)]
    return complex_.with_angles(mapping)
