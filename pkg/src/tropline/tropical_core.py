"""Exact min-plus linear algebra on rational matrices.

Scalars are :class:`fractions.Fraction`; integers are accepted anywhere a
scalar is expected. Tropical addition is ``min``, tropical multiplication
is ``+``. Matrices are plain lists of rows.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from itertools import combinations, permutations
from typing import Optional, Sequence

Rat = Fraction

_PERMS3 = tuple(permutations(range(3)))


def as_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def rat_matrix(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Coerce a nested sequence to a rectangular list-of-lists of Fractions."""
    out = [[as_rat(x) for x in row] for row in rows]
    if not out or not out[0]:
        raise ValueError("matrix must have at least one row and one column")
    width = len(out[0])
    for i, row in enumerate(out):
        if len(row) != width:
            raise ValueError(f"row {i} has {len(row)} entries, expected {width}")
    return out


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


def trop_det3_is_singular(m: Sequence[Sequence]) -> bool:
    """True iff the minimum permutation sum of a 3x3 matrix is attained twice."""
    if len(m) != 3 or any(len(row) != 3 for row in m):
        raise ValueError("expected a 3x3 matrix")
    sums = sorted(m[0][s[0]] + m[1][s[1]] + m[2][s[2]] for s in _PERMS3)
    return sums[0] == sums[1]


@dataclass(frozen=True)
class RankVerdict:
    """Outcome of :func:`tropical_rank_le2`.

    ``witness`` is ``(rows, cols)``, two 0-based index triples of the first
    tropically nonsingular 3x3 minor, or ``None`` when collinear.
    """

    collinear: bool
    witness: Optional[tuple[tuple[int, int, int], tuple[int, int, int]]] = None

    def __bool__(self) -> bool:
        return self.collinear


def tropical_rank_le2(m: Sequence[Sequence]) -> RankVerdict:
    """Decide whether ``m`` has tropical rank at most 2.

    Scans row triples, then column triples, in lexicographic order and
    stops at the first nonsingular minor.
    """
    d = len(m)
    n = len(m[0]) if d else 0
    if d < 3 or n < 3:
        return RankVerdict(True)
    # singularity is invariant under positive scaling, so clear denominators once
    scale = lcm(*(Fraction(x).denominator for row in m for x in row))
    m = [[int(Fraction(x) * scale) for x in row] for row in m]
    col_triples = list(combinations(range(n), 3))
    for rows in combinations(range(d), 3):
        r0, r1, r2 = (m[i] for i in rows)
        for cols in col_triples:
            minor = [[r[c] for c in cols] for r in (r0, r1, r2)]
            if not trop_det3_is_singular(minor):
                return RankVerdict(False, (rows, cols))
    return RankVerdict(True)


def normalize_point(v: Sequence) -> tuple[Fraction, ...]:
    """Representative of ``v`` in tropical projective space with first coordinate 0."""
    if not v:
        raise ValueError("point must have at least one coordinate")
    v = [as_rat(x) for x in v]
    return tuple(x - v[0] for x in v)

