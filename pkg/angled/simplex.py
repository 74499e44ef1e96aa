"""
Exact two-phase simplex over Fractions with Bland's rule.

    maximize  c . x   subject to  rows (<=, >=, =),  x >= 0

The tableau is kept in canonical form (basic columns are unit vectors), so
reduced costs are recomputed from the objective at every step. Bland's rule
(smallest improving column, ratio ties to the smallest basic column) makes
cycling impossible; no tolerance is involved anywhere.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

logger = logging.getLogger(__name__)


class Sense(str, enum.Enum):
    LE = "<="
    GE = ">="
    EQ = "="


class LPStatus(str, enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass
class Row:
    coeffs: dict[int, Fraction]
    sense: Sense
    rhs: Fraction


@dataclass
class LinearProgram:
    """Variables are indexed 0..n-1 and all non-negative."""
    n: int
    objective: dict[int, Fraction] = field(default_factory=dict)
    rows: list[Row] = field(default_factory=list)
    names: list[str] = field(default_factory=list)

    def variable(self, name: str) -> int:
        self.names.append(name)
        self.n = len(self.names)
        return self.n - 1

    def add(self, coeffs: Mapping[int, "int | Fraction"], sense: Sense, rhs: "int | Fraction") -> None:
        cleaned = {j: Fraction(v) for j, v in coeffs.items() if v != 0}
        self.rows.append(Row(cleaned, sense, Fraction(rhs)))

    def maximize(self, coeffs: Mapping[int, "int | Fraction"]) -> None:
        self.objective = {j: Fraction(v) for j, v in coeffs.items() if v != 0}


@dataclass(frozen=True)
class LPResult:
    status: LPStatus
    value: Optional[Fraction] = None
    x: tuple[Fraction, ...] = ()
    pivots: int = 0


class _Tableau:
    def __init__(self, lp: LinearProgram):
        self.n = lp.n
        rows = []
        for row in lp.rows:
            coeffs, sense, rhs = dict(row.coeffs), row.sense, row.rhs
            if rhs < 0:
                coeffs = {j: -v for j, v in coeffs.items()}
                rhs = -rhs
                sense = {Sense.LE: Sense.GE, Sense.GE: Sense.LE, Sense.EQ: Sense.EQ}[sense]
            rows.append((coeffs, sense, rhs))

        n_slack = sum(1 for _, s, _ in rows if s != Sense.EQ)
        n_art = sum(1 for _, s, _ in rows if s != Sense.LE)
        self.width = self.n + n_slack + n_art
        self.artificial_from = self.n + n_slack

        self.a: list[list[Fraction]] = []
        self.b: list[Fraction] = []
        self.basis: list[int] = []
        slack = self.n
        art = self.artificial_from
        for coeffs, sense, rhs in rows:
            line = [Fraction(0)] * self.width
            for j, v in coeffs.items():
                line[j] = v
            if sense == Sense.LE:
                line[slack] = Fraction(1)
                self.basis.append(slack)
                slack += 1
            else:
                if sense == Sense.GE:
                    line[slack] = Fraction(-1)
                    slack += 1
                line[art] = Fraction(1)
                self.basis.append(art)
                art += 1
            self.a.append(line)
            self.b.append(rhs)
        self.pivots = 0

    def is_artificial(self, j: int) -> bool:
        return j >= self.artificial_from

    def reduced_costs(self, c: list[Fraction]) -> list[Fraction]:
        costs = list(c)
        for i, bj in enumerate(self.basis):
            cb = c[bj]
            if cb != 0:
                row = self.a[i]
                for j in range(self.width):
                    if row[j] != 0:
                        costs[j] -= cb * row[j]
        return costs

    def pivot(self, i: int, j: int) -> None:
        row = self.a[i]
        p = row[j]
        self.a[i] = row = [v / p for v in row]
        self.b[i] /= p
        for k in range(len(self.a)):
            if k == i:
                continue
            f = self.a[k][j]
            if f != 0:
                self.a[k] = [vk - f * vi for vk, vi in zip(self.a[k], row)]
                self.b[k] -= f * self.b[i]
        self.basis[i] = j
        self.pivots += 1

    def run(self, c: list[Fraction], allow_artificial: bool) -> LPStatus:
        while True:
            costs = self.reduced_costs(c)
            entering = next(
                (j for j in range(self.width)
                 if costs[j] > 0 and (allow_artificial or not self.is_artificial(j))),
                None,
            )
            if entering is None:
                return LPStatus.OPTIMAL
            candidates = [
                (self.b[i] / self.a[i][entering], self.basis[i], i)
                for i in range(len(self.a))
                if self.a[i][entering] > 0
            ]
            if not candidates:
                return LPStatus.UNBOUNDED
            _, _, leaving = min(candidates)
            self.pivot(leaving, entering)

    def drive_out_artificials(self) -> None:
        i = 0
        while i < len(self.a):
            if self.is_artificial(self.basis[i]):
                j = next((j for j in range(self.artificial_from) if self.a[i][j] != 0), None)
                if j is None:
                    # redundant constraint
                    del self.a[i], self.b[i], self.basis[i]
                    continue
                self.pivot(i, j)
            i += 1

    def value(self, c: list[Fraction]) -> Fraction:
        return sum((c[bj] * self.b[i] for i, bj in enumerate(self.basis)), Fraction(0))

    def solution(self) -> tuple[Fraction, ...]:
        x = [Fraction(0)] * self.n
        for i, bj in enumerate(self.basis):
            if bj < self.n:
                x[bj] = self.b[i]
        return tuple(x)


def solve(lp: LinearProgram) -> LPResult:
    """Optimal vertex of the LP, or the reason there is none."""
    tableau = _Tableau(lp)

    phase1 = [Fraction(0)] * tableau.width
    for j in range(tableau.artificial_from, tableau.width):
        phase1[j] = Fraction(-1)
    tableau.run(phase1, allow_artificial=True)
    if tableau.value(phase1) < 0:
        logger.debug("simplex: infeasible after %d pivots", tableau.pivots)
        return LPResult(LPStatus.INFEASIBLE, pivots=tableau.pivots)
    tableau.drive_out_artificials()

    c = [Fraction(0)] * tableau.width
    for j, v in lp.objective.items():
        c[j] = v
    status = tableau.run(c, allow_artificial=False)
    if status == LPStatus.UNBOUNDED:
        logger.debug("simplex: unbounded after %d pivots", tableau.pivots)
        return LPResult(LPStatus.UNBOUNDED, pivots=tableau.pivots)
    logger.debug("simplex: optimum %s after %d pivots", tableau.value(c), tableau.pivots)
    return LPResult(LPStatus.OPTIMAL, tableau.value(c), tableau.solution(), tableau.pivots)
