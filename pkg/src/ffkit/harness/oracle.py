"""Brute-force oracles, independent of the solvers they check.

``brute_force_search`` scans edge subsets as integers in increasing order
(bit ``i`` = edge ``i``), so the answer is the first satisfying subset in
that order.  Degree clauses are filtered in numpy chunks; structural clauses
(tree-connectivity, bipartiteness) are decided per candidate with local code.
"""

from __future__ import annotations

import numpy as np

from ..contract import FactorContract
from ..errors import CapacityError
from ..graph import Multigraph

EDGE_CAP = 20
_CHUNK = 1 << 16


def _partitions(n):
    """Restricted-growth labelings of ``range(n)``."""
    if n == 0:
        yield ()
        return
    labels = [0] * n

    def rec(i, top):
        if i == n:
            yield tuple(labels)
            return
        for b in range(top + 2):
            labels[i] = b
            yield from rec(i + 1, max(top, b))

    labels[0] = 0
    yield from rec(1, 0)


def _components(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = n
    for u, v in edges:
        a, b = find(u), find(v)
        if a != b:
            parent[a] = b
            count -= 1
    return count


def tree_connected(G: Multigraph, m: int, subset) -> bool:
    """m edge-disjoint spanning trees exist, decided by the partition formula
    ``e(P) >= m(|P| - 1)`` over every partition (connectivity when m = 1)."""
    if m <= 0 or G.n <= 1:
        return True
    edges = [G.edges[e] for e in subset if G.edges[e][0] != G.edges[e][1]]
    if _components(G.n, edges) > 1:
        return False
    if m == 1:
        return True
    if len(edges) < m * (G.n - 1):
        return False
    for labels in _partitions(G.n):
        k = max(labels) + 1
        if k == 1:
            continue
        cross = sum(1 for u, v in edges if labels[u] != labels[v])
        if cross < m * (k - 1):
            return False
    return True


def bipartite(G: Multigraph, subset) -> bool:
    color = [-1] * G.n
    adj = [[] for _ in range(G.n)]
    for e in subset:
        u, v = G.edges[e]
        if u == v:
            return False
        adj[u].append(v)
        adj[v].append(u)
    for s in range(G.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if color[y] < 0:
                    color[y] = 1 - color[x]
                    stack.append(y)
                elif color[y] == color[x]:
                    return False
    return True


def _degree_ok_table(G, C):
    table = np.zeros((G.n, G.max_degree + 1), dtype=bool)
    for v in range(G.n):
        for d in range(G.degree(v) + 1):
            ok = True
            if C.g is not None and d < C.g[v]:
                ok = False
            if C.f is not None and d > C.f[v]:
                ok = False
            if C.lists is not None and C.lists[v] is not None and d not in C.lists[v]:
                ok = False
            if C.mod is not None and (d - C.mod.res[v]) % C.mod.k:
                ok = False
            table[v, d] = ok
    return table


def brute_force_candidates(G: Multigraph, C: FactorContract, cap=EDGE_CAP):
    """Every subset meeting ``C``, in increasing bitmask order."""
    if G.m > cap:
        raise CapacityError(f"brute force capped at |E| <= {cap} (|E|={G.m})")
    C.check(G)
    inc = np.zeros((G.m, G.n), dtype=np.int64)
    for e, (u, v) in enumerate(G.edges):
        inc[e, u] += 1
        inc[e, v] += 1
    table = _degree_ok_table(G, C)
    need = sum(1 << e for e in C.include)
    banned = sum(1 << e for e in C.exclude)
    shifts = np.arange(G.m, dtype=np.int64)
    total = 1 << G.m
    for start in range(0, total, _CHUNK):
        masks = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        keep = ((masks & need) == need) & ((masks & banned) == 0)
        masks = masks[keep]
        if len(masks) == 0:
            continue
        bits = (masks[:, None] >> shifts) & 1
        deg = bits @ inc
        ok = np.ones(len(masks), dtype=bool)
        for v in range(G.n):
            ok &= table[v, deg[:, v]]
        for mask in masks[ok]:
            H = frozenset(e for e in range(G.m) if (int(mask) >> e) & 1)
            if C.m and not tree_connected(G, C.m, H):
                continue
            if C.m0 and not tree_connected(G, C.m0, frozenset(range(G.m)) - H):
                continue
            if C.bipartite and not bipartite(G, H):
                continue
            yield H


def brute_force_search(G: Multigraph, C: FactorContract, cap=EDGE_CAP):
    """First subset (in bitmask order) meeting every clause of ``C``, or None."""
    return next(brute_force_candidates(G, C, cap), None)


def brute_force_bipartite_index(G: Multigraph):
    """Fewest edges inside the sides, over all ``2**n`` side assignments."""
    best = G.m
    for mask in range(1 << G.n):
        inside = sum(1 for u, v in G.edges if ((mask >> u) ^ (mask >> v)) & 1 == 0)
        best = min(best, inside)
    return best


def brute_force_max_packing(G: Multigraph):
    """``min over partitions P of floor(e(P) / (|P| - 1))`` (infinite for n <= 1)."""
    if G.n <= 1:
        return float("inf")
    best = None
    for labels in _partitions(G.n):
        k = max(labels) + 1
        if k == 1:
            continue
        cross = sum(1 for u, v in G.edges if labels[u] != labels[v])
        val = cross // (k - 1)
        best = val if best is None else min(best, val)
    return best
