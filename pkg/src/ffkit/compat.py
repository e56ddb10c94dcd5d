"""Residue compatibility, bipartite index, and bipartite-index decompositions.

A residue map ``f`` (mod ``k``) is compatible with ``G`` with respect to
``(X, Y)`` when ``sum_X f - 2x = sum_Y f`` for some ``0 <= x <= e(X)`` or
``sum_X f = sum_Y f - 2y`` for some ``0 <= y <= e(Y)`` (mod ``k``).
Bipartitions are enumerated with vertex 0 fixed in ``X``; since the
definition is symmetric in the two sides nothing is lost, and the
one-sided bipartition ``X = V`` is included.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .connectivity import TreePacking, edge_connectivity, tree_packing
from .errors import CapacityError, InvalidInput, PreconditionUnmet
from .graph import Bipartition, Multigraph, ResidueTarget, bipartite_factor, inside_edges, two_coloring

BIPARTITION_CAP = 16


@dataclass(frozen=True)
class CompatibilityVerdict:
    compatible: bool
    witness: Bipartition | None = None  # a bipartition refuting compatibility
    slack: tuple | None = None  # ("x", value) or ("y", value) for a single bipartition
    method: str = "full"  # full | bipartition | bipartite-unique | low-bi | modulus-one

    def __bool__(self):
        return self.compatible


def _min_solution(D, k):
    """Least ``x >= 0`` with ``2x = D (mod k)``, or None."""
    D %= k
    for x in range(k):
        if (2 * x - D) % k == 0:
            return x
    return None


def compatible_wrt(G: Multigraph, R: ResidueTarget, P: Bipartition) -> CompatibilityVerdict:
    P.validate(G)
    R.check(G)
    k = R.k
    sX = sum(R.res[v] for v in P.X)
    sY = sum(R.res[v] for v in P.Y)
    eX = sum(1 for u, v in G.edges if u in P.X and v in P.X)
    eY = sum(1 for u, v in G.edges if u in P.Y and v in P.Y)
    x = _min_solution(sX - sY, k)
    if x is not None and x <= eX:
        return CompatibilityVerdict(True, slack=("x", x), method="bipartition")
    y = _min_solution(sY - sX, k)
    if y is not None and y <= eY:
        return CompatibilityVerdict(True, slack=("y", y), method="bipartition")
    return CompatibilityVerdict(False, witness=P, method="bipartition")


def _side_masks(n):
    """Rows of ``2**(n-1)`` bipartitions (vertex 0 always in X, True = X)."""
    if n == 0:
        return np.ones((1, 0), dtype=bool)
    idx = np.arange(1 << (n - 1), dtype=np.int64)
    cols = [np.ones(len(idx), dtype=bool)]
    for v in range(1, n):
        cols.append(((idx >> (v - 1)) & 1) == 0)
    return np.stack(cols, axis=1)


def _inside_counts(G, sides, subset=None):
    eX = np.zeros(len(sides), dtype=np.int64)
    eY = np.zeros(len(sides), dtype=np.int64)
    for i in range(G.m) if subset is None else sorted(subset):
        u, v = G.edges[i]
        eX += sides[:, u] & sides[:, v]
        eY += ~sides[:, u] & ~sides[:, v]
    return eX, eY


def _solution_table(k):
    table = np.full(k, np.iinfo(np.int64).max, dtype=np.int64)  # max means "no solution"
    for x in range(k - 1, -1, -1):
        table[(2 * x) % k] = x
    return table


def compatible(G: Multigraph, R: ResidueTarget, cap=BIPARTITION_CAP, method="auto", hint=None):
    """Compatibility with respect to every bipartition.

    ``method="auto"`` first tries the shortcuts whose hypotheses verify:
    ``k = 1``; connected bipartite ``(2k-1)``-edge-connected graphs (unique
    bipartition); and, with a ``hint`` bipartition having fewer than ``k-1``
    inside edges on a ``(2k-3)``-edge-connected graph, that one bipartition.
    ``method="full"`` always enumerates.
    """
    R.check(G)
    k = R.k
    if method not in ("auto", "full"):
        raise InvalidInput(f"unknown compatibility method {method!r}")
    if k == 1:
        return CompatibilityVerdict(True, method="modulus-one")
    if method == "auto":
        P = two_coloring(G)
        if P is not None and G.is_connected() and edge_connectivity(G) >= 2 * k - 1:
            v = compatible_wrt(G, R, P)
            return CompatibilityVerdict(v.compatible, None if v else P, v.slack, "bipartite-unique")
        if hint is not None:
            inside = len(inside_edges(G, hint))
            if inside < k - 1 and edge_connectivity(G) >= 2 * k - 3:
                v = compatible_wrt(G, R, hint)
                if v:
                    return CompatibilityVerdict(True, None, v.slack, "low-bi")
    if G.n > cap:
        raise CapacityError(f"bipartition enumeration capped at n <= {cap} (n={G.n})")
    sides = _side_masks(G.n)
    res = np.asarray(R.res, dtype=np.int64)
    sX = sides.astype(np.int64) @ res
    D = (2 * sX - int(res.sum())) % k
    eX, eY = _inside_counts(G, sides)
    table = _solution_table(k)
    ok = (table[D] <= eX) | (table[(-D) % k] <= eY)
    bad = np.flatnonzero(~ok)
    if len(bad) == 0:
        return CompatibilityVerdict(True, method="full")
    row = sides[bad[0]]
    P = Bipartition.from_side(G, np.flatnonzero(row).tolist())
    return CompatibilityVerdict(False, witness=P, method="full")


def max_cut(G: Multigraph, cap=BIPARTITION_CAP, subset=None):
    """``(cut size, Bipartition)`` of a maximum cut; first in enumeration order."""
    if G.n > cap:
        raise CapacityError(f"max-cut enumeration capped at n <= {cap} (n={G.n})")
    sides = _side_masks(G.n)
    cut = _cut_sizes(G, sides, subset)
    best = int(np.argmax(cut))
    return int(cut[best]), Bipartition.from_side(G, np.flatnonzero(sides[best]).tolist())


def _cut_sizes(G, sides, subset=None):
    cut = np.zeros(len(sides), dtype=np.int64)
    for i in range(G.m) if subset is None else sorted(subset):
        u, v = G.edges[i]
        if u != v:
            cut += sides[:, u] != sides[:, v]
    return cut


def bipartite_index(G: Multigraph, cap=BIPARTITION_CAP, subset=None):
    """``|E| - max cut``: fewest edges whose removal leaves a bipartite factor."""
    size = G.m if subset is None else len(subset)
    if G.n == 0:
        return 0
    return size - max_cut(G, cap, subset)[0]


def bipartitions_by_cut(G: Multigraph, subset=None, cap=BIPARTITION_CAP):
    """Bipartitions in order of decreasing cut size (ties: enumeration order)."""
    if G.n > cap:
        raise CapacityError(f"bipartition enumeration capped at n <= {cap} (n={G.n})")
    sides = _side_masks(G.n)
    cut = _cut_sizes(G, sides, subset)
    for i in np.argsort(-cut, kind="stable"):
        yield Bipartition.from_side(G, np.flatnonzero(sides[i]).tolist())


def bipartite_tree_factor(G: Multigraph, m: int, within=None, cap=BIPARTITION_CAP):
    """A bipartition ``(X, Y)`` with ``G[X, Y]`` m-tree-connected, plus the packing.

    Searches bipartitions by decreasing cut; None when there is none.
    """
    ground = frozenset(range(G.m)) if within is None else G.check_subset(within)
    for P in bipartitions_by_cut(G, ground, cap):
        cross = bipartite_factor(G, P) & ground
        packing = tree_packing(G, m, within=cross)
        if packing is not None:
            return P, packing
    return None


def tree_join(G: Multigraph, tree, odd):
    """Edges ``J`` of the spanning tree with ``d_J(v)`` odd exactly on ``odd``."""
    odd = set(odd)
    if len(odd) % 2:
        raise InvalidInput("a tree join needs an even number of odd vertices")
    adj = [[] for _ in range(G.n)]
    for e in sorted(tree):
        u, v = G.edges[e]
        adj[u].append(e)
        adj[v].append(e)
    parent_edge = [None] * G.n
    order = [0]
    seen = {0}
    for x in order:
        for e in adj[x]:
            y = G.other(e, x)
            if y not in seen:
                seen.add(y)
                parent_edge[y] = e
                order.append(y)
    parity = [1 if v in odd else 0 for v in range(G.n)]
    J = set()
    for y in reversed(order[1:]):
        if parity[y]:
            e = parent_edge[y]
            J.add(e)
            parity[y] = 0
            parity[G.other(e, y)] ^= 1
    return frozenset(J)


@dataclass(frozen=True)
class BiIndexSplit:
    G1: frozenset
    G2: frozenset
    P: Bipartition
    inside: int  # e_G2(X) + e_G2(Y)
    target: int  # min(k0, bi(G))


def _plain_split(G, m1, m2, k0, cap):
    packing = tree_packing(G, m1 + 2 * m2)
    if packing is None:
        raise PreconditionUnmet(f"graph is not {m1 + 2 * m2}-tree-connected")
    trees = packing.trees
    H2 = frozenset().union(*trees[m1:]) if m2 else frozenset()
    H1 = G.complement(H2)
    found = bipartite_tree_factor(G, m2, within=H2, cap=cap)
    if found is None:
        raise AssertionError("no bipartition keeps half of the tree packing")
    P = found[0]
    b = min(k0, bipartite_index(G, cap))
    inside2 = sorted(inside_edges(G, P, H2))
    t = len(inside2)
    if t > b:
        moved = frozenset(inside2[: t - b])
        H1, H2 = H1 | moved, H2 - moved
    elif t < b:
        cross = H2 - frozenset(inside2)
        split = tree_packing(G, b - t + m2, within=cross)
        if split is None:
            raise AssertionError("cross part lost tree-connectivity")
        F1 = frozenset().union(*split.trees[: b - t])
        M = frozenset(sorted(inside_edges(G, P, H1))[: b - t])
        if len(M) < b - t:
            raise AssertionError("not enough inside edges to reach the bipartite index")
        H1, H2 = (H1 - M) | F1, (H2 - F1) | M
    return H1, H2, P, b


def decompose_by_bi_index(G: Multigraph, m1: int, m2: int, k0: int, parity_side=None, equality=True, cap=BIPARTITION_CAP):
    """Split ``E(G)`` into ``G1`` (m1-tree-connected) and ``G2`` (``G2[X,Y]``
    m2-tree-connected) with ``e_G2(X) + e_G2(Y) = min(k0, bi(G))``.

    With ``parity_side`` in {1, 2} that factor is made even using one extra
    spanning tree; ``equality=False`` needs one extra tree and only
    guarantees ``>=``, ``equality=True`` needs two and keeps ``=``.
    """
    if not m2 >= k0 >= 0 or m1 < 0:
        raise InvalidInput("need m2 >= k0 >= 0 and m1 >= 0")
    if parity_side not in (None, 1, 2):
        raise InvalidInput("parity_side must be None, 1 or 2")
    if parity_side is None:
        G1, G2, P, b = _plain_split(G, m1, m2, k0, cap)
    else:
        need = m1 + 2 * m2 + (2 if equality else 1)
        if tree_packing(G, need) is None:
            raise PreconditionUnmet(f"graph is not {need}-tree-connected")
        if equality:
            G1, G2p, P, b = _plain_split(G, m1, m2 + 1, k0, cap)
            cross = G2p - inside_edges(G, P, G2p)
            T = tree_packing(G, m2 + 1, within=cross).trees[-1]
            G2 = G2p - T
        else:
            G1p, G2, P, b = _plain_split(G, m1 + 1, m2, k0, cap)
            T = tree_packing(G, m1 + 1, within=G1p).trees[-1]
            G1 = G1p - T
        target = G1 if parity_side == 1 else G2
        deg = G.degrees_in(target)
        J = tree_join(G, T, [v for v in range(G.n) if deg[v] % 2])
        if parity_side == 1:
            G1, G2 = G1 | J, G2 | (T - J)
        else:
            G1, G2 = G1 | (T - J), G2 | J
    inside = len(inside_edges(G, P, G2))
    return BiIndexSplit(G1, G2, P, inside, b)
