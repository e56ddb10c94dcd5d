"""Seeded small instances comparing the exact solvers with the brute-force oracle.

Each instance is a graph with at most 16 edges and one degree clause family
(interval, list or residue-in-window), optionally with forced (``F``) and
forbidden (``F0``) edges.  Solver and oracle must agree on existence, and any
factor a solver returns must pass the verifier.  ``tour_instance`` draws
oriented instances for the tour construction in the same seeded way.
"""

from __future__ import annotations

import numpy as np

from ..contract import FactorContract
from ..graph import Multigraph, ResidueTarget
from ..solvers import directed_list_factor, gf_factor, lovasz_check, modulo_factor_bounded
from .generators import generate
from .oracle import brute_force_search
from .verify import verify

EDGE_LIMIT = 16

SMALL_FAMILIES = [
    ("complete", {"n": 4}), ("complete", {"n": 5}), ("complete-bipartite", {"a": 2, "b": 3}),
    ("complete-bipartite", {"a": 3, "b": 3}), ("circulant", {"n": 6, "offsets": "1"}),
    ("circulant", {"n": 7, "offsets": "1 2"}), ("circulant", {"n": 8, "offsets": "1"}),
    ("dipole", {"width": 3}), ("dipole", {"width": 6}), ("petersen", {}),
    ("multiplied", {"base": "complete", "n": 3, "t": 2}), ("multiplied", {"base": "complete", "n": 4, "t": 2}),
    ("random-regular-multigraph", {"n": 6, "r": 3}), ("union-of-hamilton-cycles", {"n": 5, "h": 2}),
]


def random_multigraph(rng, n_max=6, m_max=EDGE_LIMIT, loops=True):
    n = int(rng.integers(2, n_max + 1))
    m = int(rng.integers(1, m_max + 1))
    edges = []
    for _ in range(m):
        u, v = (int(x) for x in rng.integers(0, n, 2))
        if u == v and not loops:
            v = (u + 1) % n
        edges.append((min(u, v), max(u, v)))
    return Multigraph(n, tuple(edges))


def _graph(rng, index, loops):
    """Alternates corpus families (loopless) and random multigraphs."""
    if index % 2 == 0:
        family, params = SMALL_FAMILIES[(index // 2) % len(SMALL_FAMILIES)]
        G = generate(family, params, int(rng.integers(0, 1000)))
        if G.m <= EDGE_LIMIT:
            return G, family
    return random_multigraph(rng, loops=loops), "random-multigraph"


def _forced(rng, G):
    ids = rng.permutation(G.m)
    nF, nF0 = (int(x) for x in rng.integers(0, 3, 2))
    return frozenset(int(e) for e in ids[:nF]), frozenset(int(e) for e in ids[nF:nF + nF0])


def instance(seed, index, kind=None, loops=True):
    """Instance ``index`` of the seeded stream: ``(G, kind, contract, source)``."""
    rng = np.random.default_rng([int(seed), int(index)])
    G, source = _graph(rng, index, loops)
    kind = kind or ("gf", "list", "modulo")[index % 3]
    d = G.degrees
    if kind == "gf":
        F, F0 = _forced(rng, G)
        g = [int(rng.integers(0, x // 2 + 2)) for x in d]
        f = [max(a, a + int(rng.integers(0, 3))) for a in g]
        C = FactorContract(include=F, exclude=F0, g=g, f=f)
    elif kind == "list":
        lists = []
        for x in d:
            size = int(rng.integers(1, x + 2))
            lists.append(frozenset(int(y) for y in rng.choice(x + 1, size=size, replace=False)))
        C = FactorContract(lists=lists)
    elif kind == "modulo":
        F, F0 = _forced(rng, G)
        k = int(rng.integers(2, 4))
        R = ResidueTarget(k, tuple(int(y) for y in rng.integers(0, k, G.n)))
        g = [max(0, x // 2 - int(rng.integers(0, k + 1))) for x in d]
        f = [x // 2 + int(rng.integers(0, k + 1)) for x in d]
        C = FactorContract(include=F, exclude=F0, g=g, f=f, mod=R)
    else:
        raise ValueError(f"unknown instance kind {kind!r}")
    return G, kind, C, source


def solve(G, kind, C):
    """Existence answer of the solver under test for this instance kind."""
    if kind == "gf":
        return gf_factor(G, C.g, C.f, C.include, C.exclude)
    if kind == "list":
        return directed_list_factor(G, None, C.lists)
    return modulo_factor_bounded(G, C.mod, C.g, C.f, C.include, C.exclude)


def compare(G, kind, C):
    """Row with the solver answer, oracle answer and verifier verdict."""
    H = solve(G, kind, C)
    B = brute_force_search(G, C)
    row = {"kind": kind, "solver": H is not None, "oracle": B is not None}
    row["agree"] = row["solver"] == row["oracle"]
    if H is not None:
        row["verified"] = verify(G, H, C).ok
        row["agree"] = row["agree"] and row["verified"]
    return row


def lovasz_instance(seed, index, loops=True):
    """A gf instance with ``g < f`` except possibly at one vertex."""
    rng = np.random.default_rng([int(seed), int(index), 7])
    G, source = _graph(rng, index, loops)
    F, F0 = _forced(rng, G)
    g = [int(rng.integers(0, x // 2 + 2)) for x in G.degrees]
    f = [a + 1 + int(rng.integers(0, 2)) for a in g]
    if index % 2 and G.n:
        v = int(rng.integers(0, G.n))
        f[v] = g[v]
    return G, g, f, F, F0, source


def lovasz_compare(G, g, f, F, F0):
    H = gf_factor(G, g, f, F, F0)
    W = lovasz_check(G, g, f, F, F0)
    return {"factor": H is not None, "witness": W is not None, "agree": (H is None) == (W is not None), "W": W}


def tour_instance(seed, index, n_max=10, m_max=30):
    """Connected oriented multigraph with ``F``, ``F0`` (not both empty) and
    slack maps ``s, s0`` covering the out-surplus: ``(G, O, F, F0, s, s0)``."""
    from ..graph import Orientation

    rng = np.random.default_rng([int(seed), int(index), 11])
    n = int(rng.integers(2, n_max + 1))
    m = int(rng.integers(n - 1, m_max + 1))
    order = [int(x) for x in rng.permutation(n)]
    edges = [(order[i], order[int(rng.integers(0, i))]) for i in range(1, n)]
    while len(edges) < m:
        u, v = (int(x) for x in rng.integers(0, n, 2))
        edges.append((u, v))
    edges = [(min(e), max(e)) for e in edges]
    perm = rng.permutation(len(edges))
    G = Multigraph(n, tuple(edges[i] for i in perm))
    O = Orientation(G, tuple(bool(x) for x in rng.integers(0, 2, G.m)))
    ids = [int(e) for e in rng.permutation(G.m)]
    nF = int(rng.integers(0, min(4, G.m) + 1))
    nF0 = int(rng.integers(0 if nF else 1, min(4, G.m - nF) + 1))
    F, F0 = frozenset(ids[:nF]), frozenset(ids[nF:nF + nF0])
    surplus = [o - i for o, i in zip(O.out_degrees(), O.in_degrees())]
    s, s0 = [], []
    for v in range(n):
        need = max(0, surplus[v])
        a = int(rng.integers(0, need + 1))
        s.append(a + int(rng.integers(0, 2)))
        s0.append(need - a)
    return G, O, F, F0, s, s0
