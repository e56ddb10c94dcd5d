"""Edge-connectivity, spanning-tree packing and partition-connectivity.

``tree_packing`` and ``decompose_partition_connected`` are exact: both run
matroid partitioning, so a NONE answer is a proof of non-existence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CapacityError, InvalidInput, PreconditionUnmet
from .graph import Multigraph, Orientation, as_vertex_map
from .matroid import DemandMatroid, GraphicMatroid, assign_ends, matroid_partition

PARTITION_CAP = 12
_CHUNK = 1 << 16
INFINITE = math.inf


@dataclass(frozen=True)
class TreePacking:
    graph: Multigraph
    trees: tuple

    def __post_init__(self):
        G = self.graph
        trees = tuple(frozenset(t) for t in self.trees)
        object.__setattr__(self, "trees", trees)
        seen = set()
        for t in trees:
            if seen & t:
                raise AssertionError("tree packing is not edge-disjoint")
            seen |= t
            if len(t) != max(G.n - 1, 0) or not G.is_connected(t):
                raise AssertionError("tree packing member is not a spanning tree")

    @property
    def m(self):
        return len(self.trees)

    @property
    def edges(self):
        return frozenset().union(*self.trees) if self.trees else frozenset()


@dataclass(frozen=True)
class PartitionWitness:
    blocks: tuple
    observed: int
    required: int

    def __post_init__(self):
        if self.observed >= self.required:
            raise AssertionError("partition witness does not refute the inequality")


def edge_connectivity(G: Multigraph):
    """Minimum ``d_G(A)`` over nonempty proper ``A``; ``INFINITE`` for one vertex.

    Stoer-Wagner on the multiplicity matrix (loops never cross a cut).
    """
    n = G.n
    if n <= 1:
        return INFINITE
    if not G.is_connected():
        return 0
    w = np.zeros((n, n), dtype=np.int64)
    for u, v in G.edges:
        if u != v:
            w[u, v] += 1
            w[v, u] += 1
    active = list(range(n))
    best = None
    while len(active) > 1:
        sub = w[np.ix_(active, active)]
        added = np.zeros(len(active), dtype=bool)
        weights = np.zeros(len(active), dtype=np.int64)
        prev = last = 0
        added[0] = True
        weights += sub[0]
        for _ in range(len(active) - 1):
            cand = np.where(added, -1, weights)
            nxt = int(np.argmax(cand))
            prev, last = last, nxt
            added[nxt] = True
            weights += sub[nxt]
        cut = int(sub[last].sum())
        best = cut if best is None else min(best, cut)
        s, t = active[prev], active[last]
        w[s, :] += w[t, :]
        w[:, s] += w[:, t]
        w[s, s] = 0
        active.remove(t)
    return best


def is_k_edge_connected(G, k):
    return k <= 0 or edge_connectivity(G) >= k


def _pack(G, m, first=(), restrict=None):
    nonloops = [i for i in range(G.m) if not G.is_loop(i) and (restrict is None or i in restrict)]
    if m * (G.n - 1) > len(nonloops):
        return None
    first = [e for e in first if e in set(nonloops)]
    rest = [e for e in nonloops if e not in set(first)]
    mats = [GraphicMatroid(G) for _ in range(m)]
    target = m * (G.n - 1)
    sets = matroid_partition(mats, first + rest, stop=lambda s: sum(map(len, s)) == target)
    if sum(map(len, sets)) < target:
        return None
    return TreePacking(G, tuple(frozenset(s) for s in sets))


def tree_packing(G: Multigraph, m: int, within=None):
    """``m`` edge-disjoint spanning trees (of the factor ``within`` if given) or None."""
    if m < 0:
        raise InvalidInput("m must be nonnegative")
    if m == 0 or G.n <= 1:
        return TreePacking(G, tuple(frozenset() for _ in range(m)))
    restrict = None if within is None else G.check_subset(within)
    return _pack(G, m, restrict=restrict)


def is_tree_connected(G, m, within=None):
    return tree_packing(G, m, within) is not None


def max_packing(G: Multigraph, within=None):
    """Largest ``m`` with ``m`` disjoint spanning trees (``INFINITE`` on one vertex)."""
    if G.n <= 1:
        return INFINITE
    idx = range(G.m) if within is None else G.check_subset(within)
    usable = sum(1 for i in idx if not G.is_loop(i))
    lo, hi = 0, usable // (G.n - 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if tree_packing(G, mid, within) is not None:
            lo = mid
        else:
            hi = mid - 1
    return lo


@lru_cache(maxsize=None)
def set_partitions(n):
    """All set partitions of ``range(n)`` as restricted growth strings, in lex order."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int8)
    rows = np.zeros((1, 1), dtype=np.int8)
    top = np.zeros(1, dtype=np.int64)
    for _ in range(1, n):
        counts = top + 2
        rows = np.repeat(rows, counts, axis=0)
        starts = np.repeat(np.cumsum(counts) - counts, counts)
        vals = np.arange(int(counts.sum())) - starts
        rows = np.concatenate([rows, vals[:, None].astype(np.int8)], axis=1)
        top = np.maximum(np.repeat(top, counts), vals)
    rows.setflags(write=False)
    return rows


def partition_values(G: Multigraph, labels, subset=None):
    """For each partition row: (number of blocks, e_G(P), singleton mask).

    ``e_G(P)`` counts edges joining different blocks plus loops at singleton blocks.
    """
    nblocks = labels.max(axis=1).astype(np.int64) + 1 if labels.shape[1] else np.ones(len(labels), np.int64)
    sizes = np.zeros(labels.shape, dtype=np.int16)
    for j in range(labels.shape[1]):
        sizes[:, j] = (labels == j).sum(axis=1)
    single = np.take_along_axis(sizes, labels.astype(np.intp), axis=1) == 1
    idx = range(G.m) if subset is None else sorted(subset)
    crossing = np.zeros(len(labels), dtype=np.int64)
    for i in idx:
        u, v = G.edges[i]
        if u == v:
            crossing += single[:, u]
        else:
            crossing += labels[:, u] != labels[:, v]
    return nblocks, crossing, single


def partition_connectivity_check(G: Multigraph, m: int, l=0, cap=PARTITION_CAP, subset=None):
    """None if ``G`` is ``(m, l)``-partition-connected, else the first violating partition.

    Checks ``e_G(P) >= m(|P|-1) + sum of l over singleton blocks`` for every
    partition, enumerated in restricted-growth-string order.
    """
    l = as_vertex_map(G, l, "l")
    if any(x < 0 for x in l):
        raise InvalidInput("demand l must be nonnegative")
    if G.n > cap:
        raise CapacityError(f"partition enumeration capped at n <= {cap} (n={G.n})")
    labels = set_partitions(G.n)
    lvec = np.asarray(l, dtype=np.int64)
    hit = None
    for start in range(0, len(labels), _CHUNK):
        chunk = labels[start:start + _CHUNK]
        nblocks, observed, single = partition_values(G, chunk, subset)
        required = m * (nblocks - 1) + single.astype(np.int64) @ lvec
        bad = np.flatnonzero(observed < required)
        if len(bad):
            hit = start + int(bad[0]), int(observed[bad[0]]), int(required[bad[0]])
            break
    if hit is None:
        return None
    row = labels[hit[0]]
    blocks = {}
    for v, b in enumerate(row):
        blocks.setdefault(int(b), []).append(v)
    return PartitionWitness(
        tuple(tuple(blocks[b]) for b in sorted(blocks)), hit[1], hit[2]
    )


def evaluate_partition(G: Multigraph, blocks, m, l, subset=None):
    """``(e_G(P), m(|P|-1) + sum l over singletons)`` for an explicit partition."""
    l = as_vertex_map(G, l, "l")
    where = {}
    for b, block in enumerate(blocks):
        for v in block:
            where[v] = b
    singles = {block[0] for block in blocks if len(block) == 1}
    observed = 0
    for i in range(G.m) if subset is None else subset:
        u, v = G.edges[i]
        if u == v:
            observed += u in singles
        elif where[u] != where[v]:
            observed += 1
    return observed, m * (len(blocks) - 1) + sum(l[v] for v in singles)


@dataclass(frozen=True)
class Decomposition:
    """``trees``: the tree packing; ``H``: the m-tree-connected factor (trees plus M);
    ``rest``: complement of ``H``; ``orientation`` meets out-degree >= ``demand`` on ``rest``."""

    trees: TreePacking
    H: frozenset
    rest: frozenset
    orientation: Orientation
    demand: tuple
    charged: frozenset  # edges of rest charged to their tail


def decompose_partition_connected(G: Multigraph, m: int, l=0, M=(), within=None):
    """Split ``G`` (or its factor ``within``) into ``m`` spanning trees containing
    ``M`` and a remainder oriented with out-degree at least ``l`` everywhere.

    Raises PreconditionUnmet when no such split exists.
    """
    l = tuple(max(0, x) for x in as_vertex_map(G, l, "l"))
    ground = frozenset(range(G.m)) if within is None else G.check_subset(within)
    M = G.check_subset(M)
    if not M <= ground:
        raise InvalidInput("M is not contained in the graph being decomposed")
    if any(G.is_loop(e) for e in M):
        raise PreconditionUnmet("M must be loopless")
    if M and max(G.degrees_in(M)) > m:
        raise PreconditionUnmet(f"max degree of M exceeds m={m}")

    target = m * max(G.n - 1, 0) + sum(l)
    mats = [GraphicMatroid(G, allowed=ground) for _ in range(m)]
    mats.append(DemandMatroid(G, l, allowed=ground - M))
    order = sorted(M) + sorted(ground - M)
    sets = matroid_partition(mats, order, stop=lambda s: sum(map(len, s)) == target)
    if sum(map(len, sets)) < target:
        witness = None
        if G.n <= PARTITION_CAP:
            witness = partition_connectivity_check(G, m, l, subset=ground)
        raise PreconditionUnmet(f"graph is not ({m}, l)-partition-connected", witness)
    trees = TreePacking(G, tuple(frozenset(s) for s in sets[:m]))
    H = trees.edges | M
    rest = ground - H
    charged = frozenset(sets[m])
    owner, _ = assign_ends(G, sorted(charged), l)
    if len(owner) != len(charged):
        raise AssertionError("charged edges lost their assignment")
    fwd = [True] * G.m
    for e, w in owner.items():
        fwd[e] = G.edges[e][0] == w
    return Decomposition(trees, H, rest, Orientation(G, tuple(fwd)), l, charged)
