"""Splits, phylogenetic trees and the orders used for shelling.

A split of the leaf set ``[N] = {1, ..., N}`` is stored by its edge label:
the part that does not contain leaf 1. Trees carry only their
non-singleton splits; pendant edges are implicit.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Optional


class IncompatibleSplits(ValueError):
    def __init__(self, s1: "Split", s2: "Split"):
        super().__init__(f"splits {sorted(s1.members)} and {sorted(s2.members)} are incompatible")
        self.pair = (s1, s2)


@dataclass(frozen=True)
class Split:
    N: int
    members: frozenset

    def __post_init__(self):
        members = frozenset(self.members)
        object.__setattr__(self, "members", members)
        if 1 in members:
            raise ValueError("edge label must not contain leaf 1; use Split.from_part")
        if not members or len(members) > self.N - 1:
            raise ValueError(f"split part must have between 1 and {self.N - 1} labels")
        if min(members) < 2 or max(members) > self.N:
            raise ValueError(f"labels must lie in 2..{self.N}")

    @classmethod
    def from_part(cls, N: int, part: Iterable[int]) -> "Split":
        """Build a split from either side of the bipartition."""
        part = frozenset(part)
        if 1 in part:
            part = frozenset(range(1, N + 1)) - part
        return cls(N, part)

    @property
    def complement(self) -> frozenset:
        return frozenset(range(1, self.N + 1)) - self.members

    @property
    def is_singleton(self) -> bool:
        return len(self.members) == 1 or len(self.members) == self.N - 1

    @property
    def mask(self) -> int:
        return _mask(self.members)

    def separates(self, i: int, j: int) -> bool:
        return (i in self.members) != (j in self.members)

    def __repr__(self):
        return f"Split({self.N}, {sorted(self.members)})"


@dataclass(frozen=True)
class Coloring:
    """Labels ``1..n`` are marked (points), ``n+1..n+d`` unmarked (directions)."""

    n: int
    d: int

    def __post_init__(self):
        if self.n < 1 or self.d < 1:
            raise ValueError("need n >= 1 and d >= 1")

    @property
    def N(self) -> int:
        return self.n + self.d

    def is_marked(self, label: int) -> bool:
        return label <= self.n

    def direction(self, label: int) -> int:
        """0-based coordinate index of the direction carried by an unmarked leaf."""
        if label <= self.n:
            raise ValueError(f"leaf {label} is marked")
        return label - self.n - 1


def _mask(labels: Iterable[int]) -> int:
    m = 0
    for x in labels:
        m |= 1 << x
    return m


def _labels(mask: int) -> frozenset:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def compatible(s1: Split, s2: Split) -> bool:
    if s1.N != s2.N:
        raise ValueError(f"splits on different leaf sets ({s1.N} vs {s2.N})")
    a, b = s1.members, s2.members
    return a <= b or b <= a or not (a & b)


def is_bicolored(s: Split, c: Coloring) -> bool:
    if s.N != c.N:
        raise ValueError(f"split has N={s.N} but coloring has N={c.N}")
    n = c.n
    inside = s.members
    if not any(x <= n for x in inside) or not any(x > n for x in inside):
        return False
    # leaf 1 is marked and always outside
    return any(x not in inside for x in range(n + 1, c.N + 1))


@dataclass(frozen=True)
class TreeGraph:
    """Explicit adjacency of a tree.

    Vertex 0 is the neighbour of leaf 1; vertex ``k`` (k >= 1) is the far end
    of the k-th split in ``edges``. ``leaf_vertex`` maps every leaf to the
    internal vertex it hangs from.
    """

    n_vertices: int
    edges: tuple  # (parent vertex, child vertex, Split)
    leaf_vertex: Mapping[int, int]

    def degree(self, v: int) -> int:
        deg = sum(1 for leaf, u in self.leaf_vertex.items() if u == v)
        return deg + sum((a == v) + (b == v) for a, b, _ in self.edges)


@dataclass(frozen=True)
class PhyloTree:
    N: int
    splits: frozenset
    lengths: Mapping = field(default_factory=dict, compare=False, hash=False)
    leaves: Optional[frozenset] = None

    def __post_init__(self):
        object.__setattr__(self, "splits", frozenset(self.splits))
        if self.leaves is None:
            object.__setattr__(self, "leaves", frozenset(range(1, self.N + 1)))
        if 1 not in self.leaves:
            raise ValueError("leaf 1 must be a leaf of every tree")
        lengths = {s: Fraction(self.lengths.get(s, 1)) for s in self.splits}
        if any(v <= 0 for v in lengths.values()):
            raise ValueError("split lengths must be positive")
        object.__setattr__(self, "lengths", lengths)

    @property
    def is_trivalent(self) -> bool:
        return len(self.splits) == max(len(self.leaves) - 3, 0)

    def length(self, s: Split) -> Fraction:
        return self.lengths[s]

    def with_lengths(self, lengths: Mapping) -> "PhyloTree":
        return PhyloTree(self.N, self.splits, dict(lengths), self.leaves)

    def sorted_splits(self) -> list:
        return sorted(self.splits, key=lambda s: (len(s.members), sorted(s.members)))

    def graph(self) -> TreeGraph:
        rest = self.leaves - {1}
        order = self.sorted_splits()[::-1]  # big clusters first so parents precede children
        vid = {}
        edges = []
        for s in order:
            parent = 0
            best = None
            for t in order:
                if t is not s and s.members < t.members and (best is None or len(t.members) < len(best.members)):
                    best = t
            if best is not None:
                parent = vid[best]
            vid[s] = len(vid) + 1
            edges.append((parent, vid[s], s))
        leaf_vertex = {1: 0}
        for x in sorted(rest):
            owner = None
            for s in order:
                if x in s.members and (owner is None or len(s.members) < len(owner.members)):
                    owner = s
            leaf_vertex[x] = 0 if owner is None else vid[owner]
        return TreeGraph(len(vid) + 1, tuple(edges), leaf_vertex)

    def __repr__(self):
        body = ", ".join(str(sorted(s.members)) for s in self.sorted_splits())
        return f"PhyloTree(N={self.N}, [{body}])"


def tree_from_splits(splits: Iterable[Split], lengths: Optional[Mapping] = None, N: Optional[int] = None) -> PhyloTree:
    """Reconstruct the tree realizing a pairwise-compatible split set."""
    splits = list(dict.fromkeys(splits))
    if N is None:
        if not splits:
            raise ValueError("N is required for an empty split set")
        N = splits[0].N
    for s in splits:
        if s.N != N:
            raise ValueError("all splits must share the same N")
    for s1, s2 in combinations(splits, 2):
        if not compatible(s1, s2):
            raise IncompatibleSplits(s1, s2)
    nontrivial = [s for s in splits if not s.is_singleton]
    tree = PhyloTree(N, nontrivial, dict(lengths or {}))
    tree.graph()  # validates that the adjacency can be built
    return tree


def enumerate_trivalent_trees(N: int) -> Iterator[PhyloTree]:
    """Every unrooted trivalent tree on ``[N]``, exactly once, unit lengths.

    Leaves 4, 5, ... are inserted in turn on every edge of the previous
    trees; edges are visited in increasing bitmask order of their cluster.
    """
    if N < 3:
        raise ValueError("need N >= 3")
    full = _mask(range(2, N + 1))
    for clusters in _insert_leaves([(_mask([2]), _mask([3]), _mask([2, 3]))], 4, N):
        splits = [Split(N, _labels(c)) for c in clusters if c != full and c & (c - 1)]
        yield PhyloTree(N, splits)


def _insert_leaves(trees, k, N):
    if k > N:
        yield from trees
        return
    bit = 1 << k
    for clusters in trees:
        grown = []
        for x in sorted(clusters):
            new = [y | bit if (y & x) == x and y != x else y for y in clusters]
            new.append(x | bit)
            new.append(bit)
            grown.append(tuple(sorted(new)))
        yield from _insert_leaves(grown, k + 1, N)


def enumerate_facets(c: Coloring) -> Iterator[PhyloTree]:
    """Trivalent trees on ``n + d`` leaves all of whose splits are bicolored."""
    if c.N < 3:
        return
    for t in enumerate_trivalent_trees(c.N):
        if all(is_bicolored(s, c) for s in t.splits):
            yield t


def subset_less(A: Iterable[int], B: Iterable[int]) -> bool:
    A, B = frozenset(A), frozenset(B)
    diff = A ^ B
    return bool(diff) and max(diff) in B


def decompose_at_leaf_one(t: PhyloTree):
    """Split a trivalent tree at the neighbour of leaf 1.

    Returns ``(M0, M1, T0, T1)`` where ``M1`` holds the largest leaf and
    ``Ti`` is the tree induced on ``{1} | Mi``.
    """
    rest = t.leaves - {1}
    if len(rest) < 2:
        raise ValueError("tree has no internal vertex")
    top = [s for s in t.splits if not any(s.members < u.members for u in t.splits)]
    if len(top) == 2:
        parts = [top[0].members, top[1].members]
    elif len(top) == 1 and len(rest) - len(top[0].members) == 1:
        parts = [top[0].members, rest - top[0].members]
    elif len(top) == 0 and len(rest) == 2:
        parts = [frozenset([x]) for x in rest]
    else:
        raise ValueError("tree is not trivalent at the neighbour of leaf 1")
    if len(parts[0] | parts[1]) != len(rest):
        raise ValueError("tree is not trivalent at the neighbour of leaf 1")
    big = max(rest)
    M1 = parts[0] if big in parts[0] else parts[1]
    M0 = rest - M1
    return M0, M1, _induced(t, M0), _induced(t, M1)


def _induced(t: PhyloTree, part: frozenset) -> PhyloTree:
    kept = [s for s in t.splits if s.members < part and len(s.members) >= 2]
    return PhyloTree(t.N, kept, {s: t.lengths[s] for s in kept}, frozenset({1}) | part)


def tree_less(t1: PhyloTree, t2: PhyloTree) -> int:
    """Compare two trivalent trees on the same leaves: -1, 0 or 1.

    Recursive on the decomposition at leaf 1: first the part ``M1``
    holding the largest leaf (subset order), then the subtree on
    ``M1``, then the subtree on ``M0``.
    """
    if t1.leaves != t2.leaves:
        raise ValueError("trees have different leaf sets")
    if not (t1.is_trivalent and t2.is_trivalent):
        raise ValueError("tree_less is defined for trivalent trees only")
    if len(t1.leaves) <= 2:
        return 0
    M0a, M1a, T0a, T1a = decompose_at_leaf_one(t1)
    M0b, M1b, T0b, T1b = decompose_at_leaf_one(t2)
    if M1a != M1b:
        return -1 if subset_less(M1a, M1b) else 1
    c = tree_less(T1a, T1b)
    if c:
        return c
    return tree_less(T0a, T0b)


def tree_sort_key(t: PhyloTree) -> tuple:
    """Key whose tuple order agrees with :func:`tree_less`.

    Subset order is the order of the bitmasks, so ``M1`` compares as an
    integer; ties fall through to the keys of the two subtrees.
    """
    clusters = {s.mask for s in t.splits}
    clusters.update(1 << x for x in t.leaves if x != 1)

    def key(c):
        if c & (c - 1) == 0:
            return ()
        inner = [x for x in clusters if x != c and (x & c) == x]
        top = [x for x in inner if not any(y != x and (y & x) == x for y in inner)]
        if len(top) != 2:
            raise ValueError("tree is not trivalent")
        hi = c.bit_length() - 1
        m1 = top[0] if top[0] >> hi & 1 else top[1]
        m0 = c ^ m1
        return (m1, key(m1), key(m0))

    return key(_mask(t.leaves - {1}))


def tree_metric(t: PhyloTree, leaf_lengths: Optional[Mapping] = None) -> list[list[Fraction]]:
    """Path-length matrix indexed by the sorted leaves of ``t``."""
    leaves = sorted(t.leaves)
    pend = {x: Fraction((leaf_lengths or {}).get(x, 0)) for x in leaves}
    if any(v < 0 for v in pend.values()):
        raise ValueError("leaf lengths must be non-negative")
    D = [[Fraction(0)] * len(leaves) for _ in leaves]
    for a, i in enumerate(leaves):
        for b in range(a + 1, len(leaves)):
            j = leaves[b]
            dist = pend[i] + pend[j] + sum((t.lengths[s] for s in t.splits if s.separates(i, j)), Fraction(0))
            D[a][b] = D[b][a] = dist
    return D


def splits_from_metric(D, N: Optional[int] = None) -> dict:
    """Non-singleton splits with positive isolation index, with that index.

    For a tree metric the isolation index of each edge split equals the
    edge length and vanishes for every other split.
    """
    N = N or len(D)
    out = {}
    others = list(range(2, N + 1))
    for r in range(2, N - 1):
        for part in combinations(others, r):
            B = [x - 1 for x in part]
            A = [x - 1 for x in range(1, N + 1) if x not in part]
            best = None
            for a in A:
                for a2 in A:
                    for b in B:
                        for b2 in B:
                            val = max(D[a][b] + D[a2][b2], D[a][b2] + D[a2][b], D[a][a2] + D[b][b2]) - D[a][a2] - D[b][b2]
                            if best is None or val < best:
                                best = val
            if best > 0:
                out[Split(N, part)] = Fraction(best) / 2
    return out


def double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out
