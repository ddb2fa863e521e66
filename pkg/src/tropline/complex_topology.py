"""The complex of tropically collinear configurations and its topology.

Vertices are the bicolored non-singleton splits of ``[n + d]``; a set of
vertices is a face iff its splits are pairwise compatible. Facets are
the trivalent trees all of whose splits are bicolored, and the
leaf-one order on trees shells the complex. The top reduced homology is
computed three ways: from the closed formula, by counting combs, and
from exact boundary-matrix ranks.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb, factorial
from typing import Iterator, Optional, Sequence

import networkx as nx

from . import _linalg
from .splits import (
    Coloring,
    PhyloTree,
    Split,
    compatible,
    enumerate_facets,
    is_bicolored,
    tree_sort_key,
)

log = logging.getLogger(__name__)

DEFAULT_FACE_CAP = 200_000


class ResourceCapExceeded(RuntimeError):
    def __init__(self, face_counts, cap):
        super().__init__(f"{sum(face_counts)} faces {list(face_counts)} exceed the cap of {cap}")
        self.face_counts = list(face_counts)
        self.cap = cap


class NotPure(RuntimeError):
    pass


class CollinearComplex:
    """Flag complex on the bicolored non-singleton splits of a coloring."""

    def __init__(self, coloring: Coloring, vertices: Sequence[Split]):
        self.coloring = coloring
        self.vertices = list(vertices)
        self._index = {s: i for i, s in enumerate(self.vertices)}
        self.adjacency = [
            frozenset(j for j, t in enumerate(self.vertices) if j != i and compatible(s, t))
            for i, s in enumerate(self.vertices)
        ]
        self._faces = None

    @property
    def dimension(self) -> int:
        """Dimension every facet should have: ``n + d - 4``."""
        return self.coloring.N - 4

    def __len__(self):
        return len(self.vertices)

    def index(self, s: Split) -> int:
        return self._index[s]

    def face_of(self, tree: PhyloTree) -> frozenset:
        return frozenset(self._index[s] for s in tree.splits)

    def tree_of(self, face) -> PhyloTree:
        return PhyloTree(self.coloring.N, [self.vertices[i] for i in face])

    def is_face(self, face) -> bool:
        face = list(face)
        return all(b in self.adjacency[a] for a, b in combinations(face, 2))

    def faces(self) -> list[list[tuple]]:
        """Faces grouped by dimension, each a sorted tuple of vertex indices."""
        if self._faces is None:
            by_dim: list[list[tuple]] = []

            def extend(face, candidates):
                k = len(face) - 1
                while len(by_dim) <= k:
                    by_dim.append([])
                by_dim[k].append(face)
                for v in sorted(candidates):
                    if v > face[-1]:
                        extend(face + (v,), candidates & self.adjacency[v])

            for v in range(len(self.vertices)):
                extend((v,), self.adjacency[v])
            for layer in by_dim:
                layer.sort()
            self._faces = by_dim
        return self._faces

    def face_counts(self) -> list[int]:
        return [len(layer) for layer in self.faces()]

    def maximal_faces(self) -> list[frozenset]:
        g = nx.Graph()
        g.add_nodes_from(range(len(self.vertices)))
        g.add_edges_from((i, j) for i, adj in enumerate(self.adjacency) for j in adj if i < j)
        return sorted((frozenset(c) for c in nx.find_cliques(g)), key=sorted)

    def check_pure(self) -> list[frozenset]:
        facets = self.maximal_faces()
        sizes = {len(f) for f in facets}
        if self.vertices and sizes != {self.coloring.N - 3}:
            raise NotPure(f"maximal face sizes {sorted(sizes)}, expected {self.coloring.N - 3}")
        return facets


def build_complex(c: Coloring) -> CollinearComplex:
    N = c.N
    verts = []
    for r in range(2, N - 1):
        for part in combinations(range(2, N + 1), r):
            s = Split(N, part)
            if is_bicolored(s, c):
                verts.append(s)
    verts.sort(key=lambda s: sorted(s.members))
    return CollinearComplex(c, verts)


# -- shelling ---------------------------------------------------------------

@dataclass
class ShellingReport:
    """Outcome of :func:`verify_shelling`.

    ``witnesses[k]`` maps each vertex ``x`` of the k-th facet ``C`` to the
    position of the first earlier facet containing ``C - x``; its keys form
    the restriction set of ``C``. Any pair ``C' < C`` is then certified by
    an ``x`` in that set outside ``C'`` (see :meth:`witness`).
    """

    order: list
    verified: bool
    counterexample: Optional[tuple[int, int]] = None
    witnesses: list = field(default_factory=list)

    @property
    def status(self):
        if self.verified:
            return "verified"
        return {"counterexample": list(self.counterexample)}

    def restriction(self, k: int) -> frozenset:
        return frozenset(self.witnesses[k])

    def witness(self, j: int, k: int):
        """``(k2, x)`` with facet ``k2`` before ``k`` and ``x`` not in facet ``j``."""
        if not j < k:
            raise ValueError("need j < k")
        for x in sorted(self.witnesses[k]):
            if x not in self.order[j]:
                return self.witnesses[k][x], x
        return None


def verify_shelling(complex_: CollinearComplex, order: Sequence) -> ShellingReport:
    """Check the three-condition shelling definition for every ordered pair.

    ``order`` holds facets either as trees or as vertex-index sets.
    """
    faces = [complex_.face_of(f) if isinstance(f, PhyloTree) else frozenset(f) for f in order]
    facets = set(complex_.check_pure())
    if len(set(faces)) != len(faces) or set(faces) != facets:
        raise ValueError("order is not a permutation of the facets")

    first_with_ridge: dict[frozenset, int] = {}
    witnesses = []
    for k, C in enumerate(faces):
        w = {}
        for x in C:
            j = first_with_ridge.get(C - {x})
            if j is not None:
                w[x] = j
        witnesses.append(w)
        for x in C:
            first_with_ridge.setdefault(C - {x}, k)

    for k, C in enumerate(faces):
        restr = frozenset(witnesses[k])
        for j in range(k):
            if restr <= faces[j]:
                log.info("shelling fails at facets %d < %d", j, k)
                return ShellingReport(faces, False, (j, k), witnesses)
    return ShellingReport(faces, True, None, witnesses)


def sort_facets(c: Coloring) -> list[PhyloTree]:
    return sorted(enumerate_facets(c), key=tree_sort_key)


def homology_facets(report: ShellingReport) -> list[frozenset]:
    """Facets whose restriction set is the whole facet."""
    if not report.verified:
        raise ValueError("shelling order was not verified")
    return [C for k, C in enumerate(report.order) if len(report.witnesses[k]) == len(C)]


# -- combs and the closed formula --------------------------------------------

def enumerate_combs(c: Coloring) -> Iterator[tuple[int, ...]]:
    """Leaf sequences ``(1, c_1, ..., c_{N-2}, N)`` of homology-carrying combs.

    ``c_1`` is unmarked, ``c_{N-2}`` is marked, and two consecutive middle
    leaves of the same colour appear in increasing order.
    """
    n, N = c.n, c.N
    middle = list(range(2, N))
    if N < 4:
        return
    marked = lambda x: x <= n  # noqa: E731

    def extend(seq, remaining):
        if not remaining:
            if marked(seq[-1]):
                yield (1, *seq, N)
            return
        prev = seq[-1] if seq else None
        for x in remaining:
            if prev is None:
                if marked(x):
                    continue
            elif marked(x) == marked(prev) and x < prev:
                continue
            yield from extend(seq + [x], [y for y in remaining if y != x])

    yield from extend([], middle)


def count_combs(c: Coloring) -> int:
    return sum(1 for _ in enumerate_combs(c))


def comb_to_tree(seq: Sequence[int]) -> PhyloTree:
    """Caterpillar with splits ``{c_k, ..., c_{N-2}, N}`` for ``k >= 2``."""
    N = len(seq)
    if seq[0] != 1 or sorted(seq) != list(range(1, N + 1)):
        raise ValueError("a comb is a permutation of 1..N starting with 1")
    return PhyloTree(N, [Split(N, seq[k:]) for k in range(2, N - 1)])


def tree_to_comb(t: PhyloTree) -> Optional[tuple[int, ...]]:
    """Inverse of :func:`comb_to_tree`, or ``None`` if ``t`` is not such a comb."""
    N = t.N
    chain = sorted(t.splits, key=lambda s: -len(s.members))
    if [len(s.members) for s in chain] != list(range(N - 2, 1, -1)):
        return None
    seq = [1]
    prev = frozenset(range(2, N + 1))
    for s in chain + [Split(N, [N])]:
        if not s.members < prev:
            return None
        gone = prev - s.members
        if len(gone) != 1:
            return None
        seq.extend(gone)
        prev = s.members
    if N not in prev:
        return None
    seq.append(N)
    return tuple(seq)


@lru_cache(maxsize=None)
def stirling2(m: int, k: int) -> int:
    """Number of partitions of an m-set into k nonempty blocks."""
    if m < 0 or k < 0:
        raise ValueError("m and k must be non-negative")
    if m == 0 or k == 0:
        return int(m == k)
    if k > m:
        return 0
    return k * stirling2(m - 1, k) + stirling2(m - 1, k - 1)


def ordered_partitions(m: int, k: int) -> int:
    """Surjections from an m-set onto k labelled blocks, by inclusion-exclusion."""
    return sum((-1) ** (k - i) * comb(k, i) * i**m for i in range(1, k + 1))


def homology_rank_formula(c: Coloring) -> int:
    n, d = c.n, c.d
    top = min(n - 1, d - 1)
    alternating = sum(ordered_partitions(n - 1, k) * ordered_partitions(d - 1, k) for k in range(1, top + 1))
    stirling = sum(factorial(k) ** 2 * stirling2(n - 1, k) * stirling2(d - 1, k) for k in range(1, top + 1))
    if alternating != stirling:
        raise AssertionError(f"formula forms disagree: {alternating} != {stirling}")
    return alternating


# -- boundary-matrix homology --------------------------------------------------

@dataclass
class HomologyReport:
    d: int
    n: int
    betti: list
    torsion: Optional[list]
    rank_formula: int
    comb_count: int
    face_counts: list
    coefficients: str

    @property
    def top_rank(self) -> int:
        return self.betti[-1] if self.betti else 0

    @property
    def consistent(self) -> bool:
        below_top = all(b == 0 for b in self.betti[:-1])
        no_torsion = self.torsion is None or all(not t for t in self.torsion)
        return below_top and no_torsion and self.top_rank == self.rank_formula == self.comb_count


def boundary_rows(faces_by_dim, k: int) -> list[dict]:
    """Boundary of every k-face as a sparse row over the (k-1)-faces."""
    if k == 0:
        return [{0: 1} for _ in faces_by_dim[0]]  # augmentation
    lower = {f: i for i, f in enumerate(faces_by_dim[k - 1])}
    rows = []
    for f in faces_by_dim[k]:
        row = {}
        for pos in range(len(f)):
            row[lower[f[:pos] + f[pos + 1:]]] = -1 if pos % 2 else 1
        rows.append(row)
    return rows


def betti_numbers(cx: CollinearComplex, coeff: str = "rational", cap: int = DEFAULT_FACE_CAP) -> HomologyReport:
    """Reduced Betti numbers in dimensions ``0..n+d-4`` from exact ranks.

    ``coeff="integer"`` runs Smith normal form and also reports the torsion
    coefficients of each reduced homology group.
    """
    if coeff not in ("rational", "integer"):
        raise ValueError("coeff must be 'rational' or 'integer'")
    c = cx.coloring
    top = max(c.N - 4, -1)
    formula, combs = homology_rank_formula(c), count_combs(c)
    if not cx.vertices:
        return HomologyReport(c.d, c.n, [0] * (top + 1), [[] for _ in range(top + 1)] if coeff == "integer" else None,
                              formula, combs, [], coeff)
    faces = cx.faces()
    counts = [len(x) for x in faces]
    if sum(counts) > cap:
        raise ResourceCapExceeded(counts, cap)
    dims = max(len(faces), top + 1)
    ranks = []
    torsion_of = []
    for k in range(len(faces)):
        rows = boundary_rows(faces, k)
        ncols = 1 if k == 0 else counts[k - 1]
        if coeff == "integer":
            inv = _linalg.invariant_factors(rows, ncols)
            ranks.append(len(inv))
            torsion_of.append([x for x in inv if x > 1])
        else:
            ranks.append(_linalg.exact_rank(rows, ncols))
        log.debug("rank of boundary in dimension %d: %d", k, ranks[-1])
    ranks.append(0)
    torsion_of.append([])
    betti = []
    torsion = []
    for k in range(dims):
        fk = counts[k] if k < len(counts) else 0
        rk = ranks[k] if k < len(ranks) else 0
        rk1 = ranks[k + 1] if k + 1 < len(ranks) else 0
        betti.append(fk - rk - rk1)
        torsion.append(torsion_of[k + 1] if k + 1 < len(torsion_of) else [])
    return HomologyReport(c.d, c.n, betti, torsion if coeff == "integer" else None, formula, combs, counts, coeff)


def reduced_euler_characteristic(cx: CollinearComplex) -> int:
    return -1 + sum((-1) ** i * f for i, f in enumerate(cx.face_counts())) if cx.vertices else -1


def euler_check(report: HomologyReport, cx: CollinearComplex) -> bool:
    """Reduced Euler characteristic of the face counts against the top rank."""
    chi = reduced_euler_characteristic(cx)
    if not cx.vertices:
        return chi == -1 and report.top_rank == 0
    return chi == (-1) ** (cx.coloring.N - 4) * report.top_rank


def full_report(c: Coloring, cap: int = DEFAULT_FACE_CAP, coeff: str = "rational", method: str = "all") -> dict:
    """JSON-ready summary of shelling and homology for one coloring.

    ``method`` selects which rank computations run: ``formula``, ``combs``,
    ``boundary`` or ``all`` (boundary matrices also verify the shelling).
    """
    cx = build_complex(c)
    out = {"d": c.d, "n": c.n}
    formula = homology_rank_formula(c)
    out["rank_formula"] = formula
    if method in ("combs", "all"):
        out["comb_count"] = count_combs(c)
    if method in ("boundary", "all"):
        if cx.vertices:
            counts = cx.face_counts()
            if sum(counts) > cap:
                raise ResourceCapExceeded(counts, cap)
        hom = betti_numbers(cx, coeff, cap)
        out["betti"] = hom.betti
        out["torsion"] = hom.torsion if hom.torsion is not None else []
        out["euler_check"] = euler_check(hom, cx)
        if cx.vertices:
            rep = verify_shelling(cx, sort_facets(c))
            out["homology_facet_count"] = len(homology_facets(rep)) if rep.verified else None
            out["shelling"] = rep.status
        else:
            out["homology_facet_count"] = 0
            out["shelling"] = "verified"
    values = [formula]
    if "comb_count" in out:
        values.append(out["comb_count"])
    if "betti" in out:
        values.append(out["betti"][-1] if out["betti"] else 0)
        values.append(out["homology_facet_count"])
        ok_low = all(b == 0 for b in out["betti"][:-1])
        ok_tors = all(not t for t in out["torsion"])
        ok = ok_low and ok_tors and out["euler_check"] and out["shelling"] == "verified"
    else:
        ok = True
    out["agree"] = ok and len(set(values)) == 1
    return out
