"""Exact factor solvers: (g,f), list, and bounded modulo-k factors.

All of them reduce to one search: every vertex gets a bitmask of admissible
degrees and a depth-first search picks how many edges of each parallel class
(edges sharing both ends) go into the factor.  Which parallel edges are taken
never matters for degrees, so the lowest ids are used.  Degree-interval
propagation prunes and failed states ``(class index, open degrees)`` are
memoised, which keeps the search exact and fast at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .contract import FactorContract
from .errors import CapacityError, ContractViolation, InvalidInput, PreconditionUnmet
from .graph import Multigraph, Orientation, ResidueTarget, as_list_family, as_vertex_map

LOVASZ_CAP = 12


def _classes(G, free):
    groups = {}
    for e in sorted(free):
        u, v = G.edges[e]
        groups.setdefault((min(u, v), max(u, v)), []).append(e)
    return [(u, v, tuple(ids)) for (u, v), ids in sorted(groups.items())]


def search_factors(G: Multigraph, masks, include=(), exclude=()):
    """Yield every factor (up to the choice among parallel edges) whose degree
    at ``v`` is a set bit of ``masks[v]``, containing ``include`` and avoiding
    ``exclude``.  Count per class ascends, so the first yield is deterministic."""
    include, exclude = frozenset(include), frozenset(exclude)
    if include & exclude:
        return
    cur = G.degrees_in(include)
    free = frozenset(range(G.m)) - include - exclude
    classes = _classes(G, free)
    rem = [0] * G.n
    last = [-1] * G.n
    for i, (u, v, ids) in enumerate(classes):
        if u == v:
            rem[u] += 2 * len(ids)
        else:
            rem[u] += len(ids)
            rem[v] += len(ids)
        last[u] = last[v] = i
    for v in range(G.n):
        if last[v] < 0 and not (masks[v] >> cur[v]) & 1:
            return
        if last[v] >= 0 and not (masks[v] >> cur[v]) & ((1 << (rem[v] + 1)) - 1):
            return
    pending = []
    for i in range(len(classes)):
        pending.append(tuple(sorted({w for u, v, _ in classes[i:] for w in (u, v)})))
    failed = set()
    chosen = []

    def feasible(w, i):
        if last[w] == i:
            return (masks[w] >> cur[w]) & 1
        return (masks[w] >> cur[w]) & ((1 << (rem[w] + 1)) - 1)

    def dfs(i):
        if i == len(classes):
            yield frozenset(include.union(*chosen)) if chosen else include
            return
        key = (i, tuple(cur[w] for w in pending[i]))
        if key in failed:
            return
        u, v, ids = classes[i]
        size = len(ids)
        found = False
        loop = u == v
        rem[u] -= 2 * size if loop else size
        if not loop:
            rem[v] -= size
        for t in range(size + 1):
            if loop:
                cur[u] += 2 * t
            else:
                cur[u] += t
                cur[v] += t
            if feasible(u, i) and (loop or feasible(v, i)):
                chosen.append(ids[:t])
                for H in dfs(i + 1):
                    found = True
                    yield H
                chosen.pop()
            if loop:
                cur[u] -= 2 * t
            else:
                cur[u] -= t
                cur[v] -= t
        rem[u] += 2 * size if loop else size
        if not loop:
            rem[v] += size
        if not found:
            failed.add(key)

    yield from dfs(0)


def first_factor(G, masks, include=(), exclude=()):
    return next(search_factors(G, masks, include, exclude), None)


def interval_masks(G, lo, hi, residue: ResidueTarget | None = None):
    masks = []
    for v in range(G.n):
        bits = 0
        for d in range(max(lo[v], 0), min(hi[v], G.degree(v)) + 1):
            if residue is None or (d - residue.res[v]) % residue.k == 0:
                bits |= 1 << d
        masks.append(bits)
    return masks


def list_masks(G, L):
    return [sum(1 << d for d in Lv if 0 <= d <= G.degree(v)) for v, Lv in enumerate(L)]


def gf_factor(G: Multigraph, g, f, F=(), F0=()):
    """A factor with ``g <= d_H <= f`` containing ``F`` and avoiding ``F0``, or None."""
    g, f = as_vertex_map(G, g, "g"), as_vertex_map(G, f, "f")
    F, F0 = G.check_subset(F), G.check_subset(F0)
    if F & F0:
        raise InvalidInput("F and F0 overlap")
    return first_factor(G, interval_masks(G, g, f), F, F0)


@dataclass(frozen=True)
class LovaszWitness:
    A: frozenset
    B: frozenset
    lhs: int  # contribution of F and F0
    rhs: int  # sum_A f + sum_B (d - g) - d(A,B)

    def __post_init__(self):
        if self.lhs <= self.rhs:
            raise AssertionError("Lovasz witness does not violate the criterion")


def _labels(n):
    """All ``3**n`` vertex labelings (0 none, 1 in A, 2 in B), lexicographic."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int8)
    idx = np.arange(3**n)
    digits = [(idx // 3 ** (n - 1 - j)) % 3 for j in range(n)]
    return np.stack(digits, axis=1).astype(np.int8)


def lovasz_values(G: Multigraph, g, f, F=(), F0=(), labels=None):
    """Vectorized ``(lhs, rhs)`` of the criterion for every labeling row."""
    if labels is None:
        labels = _labels(G.n)
    inA = labels == 1
    inB = labels == 2
    f = np.asarray(f, dtype=np.int64)
    slack = np.asarray([G.degree(v) - g[v] for v in range(G.n)], dtype=np.int64)
    rhs = inA @ f + inB @ slack
    dF = np.asarray(G.degrees_in(F), dtype=np.int64)
    dF0 = np.asarray(G.degrees_in(F0), dtype=np.int64)
    lhs = inA @ dF + inB @ dF0
    for e, (u, v) in enumerate(G.edges):
        if u == v:
            continue
        between = (inA[:, u] & inB[:, v]) | (inB[:, u] & inA[:, v])
        rhs -= between
        if e in F or e in F0:
            lhs -= between
    return lhs, rhs


def lovasz_check(G: Multigraph, g, f, F=(), F0=(), cap=LOVASZ_CAP):
    """None when every disjoint ``(A, B)`` satisfies the criterion, else the
    first violator ordered by ``|A u B|`` then by the labeling (vertex 0 most
    significant, none < A < B)."""
    g, f = as_vertex_map(G, g, "g"), as_vertex_map(G, f, "f")
    F, F0 = G.check_subset(F), G.check_subset(F0)
    if F & F0:
        raise InvalidInput("F and F0 overlap")
    if any(a > b for a, b in zip(g, f)):
        raise InvalidInput("g(v) > f(v) somewhere")
    tight = [v for v in range(G.n) if g[v] == f[v]]
    if len(tight) > 1:
        raise InvalidInput(f"g = f at {len(tight)} vertices; the criterion allows at most one")
    if G.n > cap:
        raise CapacityError(f"criterion enumeration capped at n <= {cap} (n={G.n})")
    labels = _labels(G.n)
    lhs, rhs = lovasz_values(G, g, f, F, F0, labels)
    bad = np.flatnonzero(lhs > rhs)
    if len(bad) == 0:
        return None
    sizes = (labels[bad] > 0).sum(axis=1)
    pick = bad[np.lexsort((bad, sizes))[0]]
    row = labels[pick]
    return LovaszWitness(
        frozenset(np.flatnonzero(row == 1).tolist()),
        frozenset(np.flatnonzero(row == 2).tolist()),
        int(lhs[pick]),
        int(rhs[pick]),
    )


def orientation_gf(G: Multigraph, g, f, F, F0, O: Orientation):
    """(g,f)-factor containing ``F`` and avoiding ``F0``, guaranteed whenever
    ``g <= d+ + d-_F - d+_F0`` and ``d- + d+_F - d-_F0 <= f`` under ``O``."""
    g, f = as_vertex_map(G, g, "g"), as_vertex_map(G, f, "f")
    F, F0 = G.check_subset(F), G.check_subset(F0)
    out, ind = O.out_degrees(), O.in_degrees()
    outF, inF = O.out_degrees(F), O.in_degrees(F)
    out0, in0 = O.out_degrees(F0), O.in_degrees(F0)
    for v in range(G.n):
        low = out[v] + inF[v] - out0[v]
        high = ind[v] + outF[v] - in0[v]
        if g[v] > low or high > f[v]:
            raise PreconditionUnmet(
                f"orientation condition fails at vertex {v}: need {g[v]} <= {low} and {high} <= {f[v]}", v
            )
    H = gf_factor(G, g, f, F, F0)
    if H is None:
        raise ContractViolation("no (g,f)-factor although the orientation condition holds", (g, f))
    return H


def directed_list_factor(G: Multigraph, O: Orientation | None, L):
    """A factor with ``d_H(v) in L(v)`` or None (guaranteed when ``|L(v)| > d+(v)``)."""
    L = as_list_family(G, L)
    return first_factor(G, list_masks(G, L))


def list_hypothesis(G, O, L, F=(), F0=(), s=0, s0=0):
    """Vertices where ``|L(v)| >= d+(v) + 1 + d-_F(v) + d-_F0(v) - s(v) - s0(v)`` fails."""
    L = as_list_family(G, L)
    s, s0 = as_vertex_map(G, s, "s"), as_vertex_map(G, s0, "s0")
    out = O.out_degrees()
    inF, in0 = O.in_degrees(F), O.in_degrees(F0)
    return [v for v in range(G.n) if len(L[v]) < out[v] + 1 + inF[v] + in0[v] - s[v] - s0[v]]


def list_factor_incl_excl(G: Multigraph, O, L, F=(), F0=(), s=0, s0=0):
    """L-factor containing ``F`` and avoiding ``F0`` via the shifted lists on
    ``G - (F u F0)``; returns ``H' u F`` or None."""
    L = as_list_family(G, L)
    F, F0 = G.check_subset(F), G.check_subset(F0)
    if F & F0:
        raise InvalidInput("F and F0 overlap")
    s, s0 = as_vertex_map(G, s, "s"), as_vertex_map(G, s0, "s0")
    dF, dF0 = G.degrees_in(F), G.degrees_in(F0)
    for v in range(G.n):
        if s[v] > dF[v] or s0[v] > dF0[v]:
            raise InvalidInput(f"s or s0 exceeds the F or F0 degree at vertex {v}")
        if any(x < s[v] or x > G.degree(v) - s0[v] for x in L[v]):
            raise InvalidInput(f"list at vertex {v} leaves [s(v), d(v) - s0(v)]")
    rest, ids = G.edge_subgraph(G.complement(F | F0))
    shifted = [
        frozenset(x - dF[v] for x in L[v] if dF[v] <= x <= G.degree(v) - dF0[v]) for v in range(G.n)
    ]
    Hp = first_factor(rest, list_masks(rest, shifted))
    if Hp is None:
        return None
    return frozenset(ids[i] for i in Hp) | F


def modulo_factor_bounded(G: Multigraph, R: ResidueTarget, lo, hi, F=(), F0=()):
    """Factor with ``d_H = R.res (mod R.k)`` and ``lo <= d_H <= hi``, or None."""
    R.check(G)
    lo, hi = as_vertex_map(G, lo, "lo"), as_vertex_map(G, hi, "hi")
    F, F0 = G.check_subset(F), G.check_subset(F0)
    return first_factor(G, interval_masks(G, lo, hi, R), F, F0)


def contract_factors(G: Multigraph, C: FactorContract, limit=None):
    """Factors meeting every clause of ``C`` (structure clauses filter the
    degree-feasible ones)."""
    from .connectivity import tree_packing
    from .graph import is_bipartite

    C.check(G)
    masks = C.allowed_masks(G)
    tried = 0
    for H in search_factors(G, masks, C.include, C.exclude):
        tried += 1
        if limit is not None and tried > limit:
            raise CapacityError(f"more than {limit} degree-feasible factors examined")
        if C.m and tree_packing(G, C.m, within=H) is None:
            continue
        if C.m0 and tree_packing(G, C.m0, within=G.complement(H)) is None:
            continue
        if C.bipartite and not is_bipartite(G, H):
            continue
        yield H


def solve_contract(G: Multigraph, C: FactorContract, limit=None):
    return next(contract_factors(G, C, limit), None)
