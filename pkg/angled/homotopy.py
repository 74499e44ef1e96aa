"""
Algebraic invariants used as oracles next to the collapse decisions.

- smith_normal_form: exact integer SNF (object-dtype numpy, Python ints),
  pivoting on the entry of least absolute value
- h1: first homology from the cellular boundary maps
- fundamental_presentation: pi_1 through a lexicographic BFS spanning tree
- tietze_simplify: relator-driven generator elimination under a step budget
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np

from angled.config import get_settings
from angled.core import require_valid
from angled.models import Complex2
from angled.schemas import AbelianInvariants, Letter, Presentation

logger = logging.getLogger(__name__)

Word = list[Letter]


# ======================================
# SMITH NORMAL FORM
# ======================================

@dataclass
class SmithForm:
    """left @ matrix @ right == diag; left and right unimodular."""
    diag: np.ndarray
    left: np.ndarray
    right: np.ndarray

    @property
    def invariant_factors(self) -> list[int]:
        k = min(self.diag.shape)
        return [abs(int(self.diag[i, i])) for i in range(k) if self.diag[i, i] != 0]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def _as_object_matrix(matrix, rows: Optional[int] = None, cols: Optional[int] = None) -> np.ndarray:
    array = np.array(matrix, dtype=object)
    if array.size == 0:
        return np.zeros((rows or 0, cols or 0), dtype=object)
    return array.reshape(array.shape[0], -1)


def _min_abs_nonzero(a: np.ndarray, s: int) -> Optional[tuple[int, int]]:
    best, where = None, None
    for i in range(s, a.shape[0]):
        for j in range(s, a.shape[1]):
            value = a[i, j]
            if value != 0 and (best is None or abs(value) < best):
                best, where = abs(value), (i, j)
    return where


def smith_normal_form(matrix, rows: Optional[int] = None, cols: Optional[int] = None) -> SmithForm:
    """
    Smith normal form over the integers.

    Unlike a floating elimination this never leaves Z: entries are Python ints
    in an object array. rows/cols give the shape of an empty matrix.
    """
    a = _as_object_matrix(matrix, rows, cols).copy()
    m, n = a.shape
    left = np.identity(m, dtype=int).astype(object)
    right = np.identity(n, dtype=int).astype(object)

    s = 0
    while s < min(m, n):
        pivot = _min_abs_nonzero(a, s)
        if pivot is None:
            break
        i, j = pivot
        a[[s, i]] = a[[i, s]]
        left[[s, i]] = left[[i, s]]
        a[:, [s, j]] = a[:, [j, s]]
        right[:, [s, j]] = right[:, [j, s]]

        p = a[s, s]
        for i in range(s + 1, m):
            if a[i, s] != 0:
                q = a[i, s] // p
                a[i] = a[i] - q * a[s]
                left[i] = left[i] - q * left[s]
        for j in range(s + 1, n):
            if a[s, j] != 0:
                q = a[s, j] // p
                a[:, j] = a[:, j] - q * a[:, s]
                right[:, j] = right[:, j] - q * right[:, s]

        if any(a[i, s] != 0 for i in range(s + 1, m)) or any(a[s, j] != 0 for j in range(s + 1, n)):
            continue  # remainders left: re-pivot at the same position

        offender = next(
            (i for i in range(s + 1, m) for j in range(s + 1, n) if a[i, j] % p != 0),
            None,
        )
        if offender is not None:
            a[s] = a[s] + a[offender]
            left[s] = left[s] + left[offender]
            continue

        if p < 0:
            a[s] = -a[s]
            left[s] = -left[s]
        s += 1

    return SmithForm(a, left, right)


# ======================================
# HOMOLOGY
# ======================================

def boundary_matrices(complex_: Complex2) -> tuple[np.ndarray, np.ndarray]:
    """d1 (V x E, head - tail) and d2 (E x F, signed traversal counts)."""
    v_pos = {v: i for i, v in enumerate(complex_.vertices)}
    e_pos = {e.id: i for i, e in enumerate(complex_.edges)}

    d1 = np.zeros((len(complex_.vertices), len(complex_.edges)), dtype=object)
    for j, edge in enumerate(complex_.edges):
        d1[v_pos[edge.head], j] += 1
        d1[v_pos[edge.tail], j] -= 1

    d2 = np.zeros((len(complex_.edges), len(complex_.faces)), dtype=object)
    for j, face in enumerate(complex_.faces):
        for directed in face.boundary:
            d2[e_pos[directed.edge], j] += directed.sign
    return d1, d2


def h1(complex_: Complex2) -> AbelianInvariants:
    """ker d1 / im d2 via two Smith normal forms."""
    require_valid(complex_, check_angles=False)
    d1, d2 = boundary_matrices(complex_)
    snf1 = smith_normal_form(d1, *d1.shape)
    snf2 = smith_normal_form(d2, *d2.shape)
    betti = len(complex_.edges) - snf1.rank - snf2.rank
    torsion = sorted(t for t in snf2.invariant_factors if t > 1)
    return AbelianInvariants(betti=betti, torsion=torsion)


def abelian_invariants(presentation: Presentation) -> AbelianInvariants:
    """Abelianization of a presented group from its exponent-sum matrix."""
    gens = {g: i for i, g in enumerate(presentation.generators)}
    matrix = np.zeros((len(presentation.relators), len(gens)), dtype=object)
    for r, word in enumerate(presentation.relators):
        for gen, exp in word:
            matrix[r, gens[gen]] += exp
    snf = smith_normal_form(matrix, *matrix.shape)
    torsion = sorted(t for t in snf.invariant_factors if t > 1)
    return AbelianInvariants(betti=len(gens) - snf.rank, torsion=torsion)


# ======================================
# PRESENTATIONS
# ======================================

def free_reduce(word: Word) -> Word:
    out: Word = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return out


def cyclic_reduce(word: Word) -> Word:
    word = free_reduce(word)
    while len(word) > 1 and word[0][0] == word[-1][0] and word[0][1] == -word[-1][1]:
        word = word[1:-1]
    return word


def invert(word: Word) -> Word:
    return [(g, -e) for g, e in reversed(word)]


def spanning_tree(complex_: Complex2, basepoint: str) -> set[str]:
    """Edges of a BFS tree from basepoint; neighbours explored in edge-id order."""
    complex_.require_vertex(basepoint)
    seen = {basepoint}
    tree: set[str] = set()
    queue = deque([basepoint])
    while queue:
        vertex = queue.popleft()
        for edge in complex_.incident_edges(vertex):
            other = edge.head if edge.tail == vertex else edge.tail
            if other not in seen:
                seen.add(other)
                tree.add(edge.id)
                queue.append(other)
    return tree


def fundamental_presentation(complex_: Complex2, basepoint: Optional[str] = None) -> Presentation:
    """
    pi_1 presentation: generators are the non-tree edges, relators the face
    boundary words with tree edges erased, freely and cyclically reduced.
    Empty relators are dropped.
    """
    require_valid(complex_, check_angles=False)
    basepoint = basepoint if basepoint is not None else complex_.vertices[0]
    tree = spanning_tree(complex_, basepoint)
    generators = [e.id for e in complex_.edges if e.id not in tree]
    relators = []
    for face in complex_.faces:
        word = cyclic_reduce([(d.edge, d.sign) for d in face.boundary if d.edge not in tree])
        if word:
            relators.append(word)
    return Presentation(generators=generators, relators=relators)


def _eliminable(presentation: Presentation) -> Optional[tuple[int, int]]:
    """(relator index, position) of a generator occurring exactly once, shortest relator first."""
    order = sorted(range(len(presentation.relators)), key=lambda r: (len(presentation.relators[r]), r))
    for r in order:
        word = presentation.relators[r]
        counts: dict[str, int] = {}
        for gen, _ in word:
            counts[gen] = counts.get(gen, 0) + 1
        for pos, (gen, _) in enumerate(word):
            if counts[gen] == 1:
                return r, pos
    return None


def tietze_simplify(presentation: Presentation, budget: Optional[int] = None) -> Presentation:
    """
    Eliminate generators using relators in which they occur exactly once.

    Each elimination is one step of the budget. From relator g^e w = 1 the
    generator is replaced by w^-1 (e = +1) or w (e = -1) everywhere; the
    relator is dropped and the others are reduced. The group is unchanged.
    """
    if budget is None:
        budget = get_settings().TIETZE_BUDGET
    current = presentation
    for step in range(budget):
        found = _eliminable(current)
        if found is None:
            break
        r, pos = found
        word = current.relators[r]
        rotated = word[pos:] + word[:pos]
        gen, exp = rotated[0]
        rest = rotated[1:]
        replacement = invert(rest) if exp > 0 else rest

        relators = []
        for k, other in enumerate(current.relators):
            if k == r:
                continue
            expanded: Word = []
            for g, e in other:
                if g == gen:
                    expanded.extend(replacement if e > 0 else invert(replacement))
                else:
                    expanded.append((g, e))
            reduced = cyclic_reduce(expanded)
            if reduced:
                relators.append(reduced)
        logger.debug("tietze step %d: eliminated %s", step + 1, gen)
        current = Presentation(
            generators=[g for g in current.generators if g != gen],
            relators=relators,
        )
    return current
