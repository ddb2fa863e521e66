"""Trees to marked points on a tropical line, and back.

A tree on ``n + d`` leaves with the colouring of :class:`Coloring` is a
parametrized tropical line once a position for marked point 1 is fixed.
Each internal edge points in the direction ``sum(e_i)`` over the
unmarked leaves ``n + i`` on its far side from leaf 1.

Relative matrices are ``d x n``: column ``j`` is the position of marked
point ``j`` minus that of point 1, in the representative whose smallest
coordinate is 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence, Union

from .splits import Coloring, PhyloTree, Split, is_bicolored
from .tropical_core import RankVerdict, as_rat, normalize_point, transpose, tropical_rank_le2


class NotCollinear(ValueError):
    def __init__(self, verdict: RankVerdict, message: str = "points are not tropically collinear"):
        if verdict.witness is not None:
            rows, cols = verdict.witness
            message += f" (nonsingular minor rows {[r + 1 for r in rows]}, cols {[c + 1 for c in cols]})"
        super().__init__(message)
        self.verdict = verdict


@dataclass(frozen=True)
class PointConfig:
    """``n`` points of tropical projective ``(d-1)``-space, first coordinate 0."""

    points: tuple

    def __post_init__(self):
        pts = tuple(p if _canonical(p) else normalize_point(p) for p in self.points)
        if not pts:
            raise ValueError("need at least one point")
        if len({len(p) for p in pts}) != 1:
            raise ValueError("points have different dimensions")
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_matrix(cls, m: Sequence[Sequence]) -> "PointConfig":
        """Columns of a ``d x n`` matrix are the points."""
        return cls(tuple(transpose(m)))

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def d(self) -> int:
        return len(self.points[0])

    def matrix(self) -> list[list[Fraction]]:
        return transpose(self.points)

    def relative_matrix(self) -> list[list[Fraction]]:
        base = self.points[0]
        cols = []
        for p in self.points:
            diff = [a - b for a, b in zip(p, base)]
            low = min(diff)
            cols.append([x - low for x in diff])
        return transpose(cols)


@dataclass(frozen=True)
class MarkedLine:
    tree: PhyloTree
    coloring: Coloring
    basepoint: tuple

    def __post_init__(self):
        if len(self.basepoint) != self.coloring.d:
            raise ValueError("basepoint has the wrong dimension")
        if self.tree.N != self.coloring.N:
            raise ValueError("tree and coloring disagree on the number of leaves")
        object.__setattr__(self, "basepoint", normalize_point(self.basepoint))


def _canonical(p) -> bool:
    return type(p) is tuple and p and p[0] == 0 and all(type(x) is Fraction for x in p)


def _zero(d, n):
    return [[Fraction(0)] * n for _ in range(d)]


def pi_split(s: Split, c: Coloring) -> list[list[Fraction]]:
    """Relative positions of the marked points for a one-edge tree of length 1."""
    if s.N != c.N:
        raise ValueError("split and coloring disagree on N")
    d, n = c.d, c.n
    out = _zero(d, n)
    if s.is_singleton or not is_bicolored(s, c):
        return out
    u = [1 if n + 1 + i in s.members else 0 for i in range(d)]
    for j in range(n):
        if j + 1 in s.members:
            for i in range(d):
                out[i][j] = Fraction(u[i])
    return out


def pi_tree(t: PhyloTree, c: Coloring) -> list[list[Fraction]]:
    d, n = c.d, c.n
    out = [[0] * n for _ in range(d)]
    scale = lcm(*(w.denominator for w in t.lengths.values()))
    for s in t.splits:
        if s.is_singleton or not is_bicolored(s, c):
            continue
        w = int(t.lengths[s] * scale)
        cols = [x - 1 for x in s.members if x <= n]
        for x in s.members:
            if x > n:
                row = out[x - n - 1]
                for j in cols:
                    row[j] += w
    return [[Fraction(x, scale) for x in row] for row in out]


def ev_points(line: MarkedLine) -> PointConfig:
    rel = pi_tree(line.tree, line.coloring)
    base = line.basepoint
    cols = [[b + rel[i][j] for i, b in enumerate(base)] for j in range(line.coloring.n)]
    return PointConfig(tuple(cols))


def canonical_tree(points: Union[PointConfig, Sequence[Sequence]]) -> MarkedLine:
    """The unique all-bicolored tree whose marked points are ``points``.

    ``points`` is a :class:`PointConfig` or a sequence of points. The tree
    is recovered from the Gromov products at leaf 1, which the relative
    matrix determines: a marked-unmarked product is a matrix entry, and
    same-colour products are max-min compositions of entries. A tree that
    reproduces the points exactly certifies collinearity; otherwise the
    rank test supplies the witness minor.
    """
    pc = points if isinstance(points, PointConfig) else PointConfig(tuple(points))
    tree = _reconstruct(pc)
    if tree is None:
        verdict = tropical_rank_le2(pc.matrix())
        if verdict.collinear:
            raise RuntimeError("collinear configuration admits no reconstruction")  # unreachable for valid input
        raise NotCollinear(verdict)
    return MarkedLine(tree, Coloring(pc.n, pc.d), pc.points[0])


def _reconstruct(pc: PointConfig):
    n, d = pc.n, pc.d
    N = n + d
    # integer arithmetic on a common denominator; lengths are rescaled at the end
    R = pc.relative_matrix()
    scale = lcm(*(x.denominator for r in R for x in r))
    R = [[int(x * scale) for x in r] for r in R]

    def gromov(a, b):
        if a > b:
            a, b = b, a
        if a <= n < b:
            return R[b - n - 1][a - 1]
        if b <= n:
            return max(min(r[a - 1], r[b - 1]) for r in R)
        ra, rb = R[a - n - 1], R[b - n - 1]
        return max(min(x, y) for x, y in zip(ra, rb))

    depth = {a: max(r[a - 1] for r in R) for a in range(2, n + 1)}
    depth.update((a, max(R[a - n - 1])) for a in range(n + 1, N + 1))
    labels = list(range(2, N + 1))
    G = {}
    for i, x in enumerate(labels):
        for y in labels[i + 1:]:
            G[x, y] = G[y, x] = gromov(x, y)

    ilen = {}

    def grow(group, base):
        blocks = []
        for x in group:
            for b in blocks:
                if G[x, b[0]] > base:
                    b.append(x)
                    break
            else:
                blocks.append([x])
        for block in blocks:
            if len(block) == 1:
                if depth[block[0]] != base:
                    return False
                continue
            h = min(G[x, y] for i, x in enumerate(block) for y in block[i + 1:])
            if h <= base or len(block) >= N - 1:
                return False
            ilen[frozenset(block)] = h - base
            if not grow(block, h):
                return False
        return True

    if N >= 3 and not grow(labels, 0):
        return None
    # exact check: the tree must reproduce the relative matrix
    back = [[0] * n for _ in range(d)]
    for members, w in ilen.items():
        cols = [x - 1 for x in members if x <= n]
        rows = [x - n - 1 for x in members if x > n]
        if not cols or not rows or len(rows) == d:
            return None  # not bicolored
        for i in rows:
            row = back[i]
            for j in cols:
                row[j] += w
    if back != R:
        return None
    lengths = {Split(N, m): Fraction(w, scale) for m, w in ilen.items()}
    return PhyloTree(N, lengths, lengths)


def residual(line: MarkedLine, pc: PointConfig) -> Fraction:
    """Largest coordinate difference between ``ev_points(line)`` and ``pc``."""
    got = ev_points(line)
    if got.n != pc.n:
        raise ValueError("different numbers of points")
    return max((abs(a - b) for p, q in zip(got.points, pc.points) for a, b in zip(p, q)), default=Fraction(0))


def column_normalize(m: Sequence[Sequence]) -> list[list[Fraction]]:
    """Shift every column so its smallest entry is 0."""
    cols = []
    for c in transpose(m):
        c = [as_rat(x) for x in c]
        low = min(c)
        cols.append([x - low for x in c])
    return transpose(cols)
