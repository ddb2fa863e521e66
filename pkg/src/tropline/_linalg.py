"""Exact rank and Smith normal form for sparse integer matrices.

Matrices are lists of sparse rows ``{col: int}``. Unit pivots are
eliminated first, shortest row first; they contribute an
invariant factor of 1 and keep every entry integral. Whatever is left is
handled densely: Bareiss elimination for the rank, a plain Smith normal
form for the invariant factors.
"""
from __future__ import annotations

import heapq


def _unit_reduce(rows, ncols):
    rows = [dict(r) for r in rows if r]
    cols: dict[int, set] = {}
    for i, r in enumerate(rows):
        for c in r:
            cols.setdefault(c, set()).add(i)
    alive = set(range(len(rows)))
    heap = [(len(r), i) for i, r in enumerate(rows)]
    heapq.heapify(heap)
    units = 0
    while heap:
        rl, p = heapq.heappop(heap)
        if p not in alive or rl != len(rows[p]):
            continue
        prow = rows[p]
        c = None
        for cc, v in prow.items():
            if (v == 1 or v == -1) and (c is None or len(cols[cc]) < len(cols[c])):
                c = cc
        if c is None:
            continue  # re-pushed if a later elimination touches this row
        pv = prow[c]
        for i in list(cols[c]):
            if i == p:
                continue
            r = rows[i]
            f = r[c] * pv  # pv is +-1
            for cc, vv in prow.items():
                nv = r.get(cc, 0) - f * vv
                if nv:
                    if cc not in r:
                        cols[cc].add(i)
                    r[cc] = nv
                elif cc in r:
                    del r[cc]
                    cols[cc].discard(i)
            if r:
                heapq.heappush(heap, (len(r), i))
            else:
                alive.discard(i)
        for cc in prow:
            cols[cc].discard(p)
        alive.discard(p)
        units += 1
    rest = [rows[i] for i in sorted(alive) if rows[i]]
    return units, rest


def _dense(rest):
    used = sorted({c for r in rest for c in r})
    idx = {c: k for k, c in enumerate(used)}
    out = []
    for r in rest:
        row = [0] * len(used)
        for c, v in r.items():
            row[idx[c]] = v
        out.append(row)
    return out


def bareiss_rank(m) -> int:
    """Rank of a dense integer matrix by fraction-free elimination."""
    m = [list(r) for r in m]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(rank, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][c]
        for i in range(rank + 1, nrows):
            for j in range(c + 1, ncols):
                m[i][j] = (m[i][j] * p - m[i][c] * m[rank][j]) // prev
            m[i][c] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def smith_diagonal(m) -> list[int]:
    """Nonzero invariant factors of a dense integer matrix."""
    a = [list(r) for r in m]
    if not a or not a[0]:
        return []
    nr, nc = len(a), len(a[0])
    diag = []
    t = 0
    while t < min(nr, nc):
        nz = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // p
                    for j in range(t, nc):
                        a[i][j] -= q * a[t][j]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // p
                    for i in range(t, nr):
                        a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        done = False
            if not done:
                nz = [(abs(a[i][t]), i, t) for i in range(t, nr) if a[i][t]]
                nz += [(abs(a[t][j]), t, j) for j in range(t, nc) if a[t][j]]
                _, pi, pj = min(nz)
                a[t], a[pi] = a[pi], a[t]
                for row in a:
                    row[t], row[pj] = row[pj], row[t]
                continue
            # the pivot must divide the remaining block
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % p), None)
            if bad is None:
                break
            i = bad[0]
            for j in range(t, nc):
                a[t][j] += a[i][j]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def exact_rank(rows, ncols) -> int:
    units, rest = _unit_reduce(rows, ncols)
    return units + bareiss_rank(_dense(rest))


def invariant_factors(rows, ncols) -> list[int]:
    """Nonzero invariant factors, sorted; units reported as 1."""
    units, rest = _unit_reduce(rows, ncols)
    return sorted([1] * units + smith_diagonal(_dense(rest)))


def check_divisibility(factors) -> bool:
    return all(b % a == 0 for a, b in zip(factors, factors[1:]))

