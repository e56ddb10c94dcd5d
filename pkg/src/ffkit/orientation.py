"""Orientations: Eulerian, in-degree demands, and the tree-plus-orientation
decompositions built on top of partition-connectivity.

Convention: partition-connectivity is stated with out-degree demands
(``connectivity.decompose_partition_connected``); in-degree demands are served
by reversing.  Lowest edge id wins every tie.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .connectivity import Decomposition, decompose_partition_connected, edge_connectivity
from .errors import ContractViolation, InvalidInput, PreconditionUnmet
from .graph import Multigraph, Orientation, as_vertex_map
from .matroid import assign_ends, unreachable_deficit


def euler_walks(G: Multigraph, subset=None):
    """Closed trails covering the (even) factor on ``subset``.

    Each trail is a list of ``(edge, tail)`` in traversal order; successor
    choice is lowest unused edge id.
    """
    idx = sorted(range(G.m) if subset is None else subset)
    inc = [[] for _ in range(G.n)]
    for e in idx:
        u, v = G.edges[e]
        inc[u].append(e)
        if v != u:
            inc[v].append(e)
    ptr = [0] * G.n
    used = set()
    walks = []
    for e0 in idx:
        if e0 in used:
            continue
        start = G.edges[e0][0]
        stack = [(start, None)]
        circuit = []
        while stack:
            v, arc = stack[-1]
            while ptr[v] < len(inc[v]) and inc[v][ptr[v]] in used:
                ptr[v] += 1
            if ptr[v] < len(inc[v]):
                e = inc[v][ptr[v]]
                used.add(e)
                stack.append((G.other(e, v), (e, v)))
            else:
                stack.pop()
                if arc is not None:
                    circuit.append(arc)
        circuit.reverse()
        walks.append(circuit)
    return walks


def eulerian_orientation(G: Multigraph, subset=None) -> Orientation:
    """Orientation with ``d+ = d-`` everywhere (on ``subset`` if given; other edges forward)."""
    deg = G.degrees_in(range(G.m) if subset is None else subset)
    odd = [v for v in range(G.n) if deg[v] % 2]
    if odd:
        raise PreconditionUnmet(f"vertex {odd[0]} has odd degree {deg[odd[0]]}", {"odd": odd})
    fwd = [True] * G.m
    for walk in euler_walks(G, subset):
        for e, tail in walk:
            fwd[e] = G.edges[e][0] == tail
    return Orientation(G, tuple(fwd))


def demand_orientation(G: Multigraph, l, subset=None, base=None) -> Orientation:
    """Orientation of the factor on ``subset`` with in-degree at least ``l(v)``.

    Edges are matched to vertex slots (a bipartite flow); when the maximum
    falls short the witness is a vertex set ``U`` touched by fewer edges than
    ``sum(l[U])``.  Edges outside ``subset`` keep the orientation of ``base``.
    """
    l = tuple(max(0, x) for x in as_vertex_map(G, l, "l"))
    idx = sorted(range(G.m) if subset is None else G.check_subset(subset))
    owner, load = assign_ends(G, idx, l)
    if sum(load) < sum(l):
        U = unreachable_deficit(G, owner, load, l, idx)
        touching = sum(1 for e in idx if G.edges[e][0] in U or G.edges[e][1] in U)
        raise PreconditionUnmet(
            "in-degree demand is infeasible",
            {"vertices": sorted(U), "edges": touching, "demand": sum(l[v] for v in U)},
        )
    base = base or Orientation(G)
    return Orientation.from_heads(G, owner, default=base)


def split_demand(G: Multigraph, m: int, z=None, z_ceil=True):
    """``l(v) = floor(d(v)/2) - m``, with ``ceil`` at ``z``; negatives clamp to 0."""
    l = [G.degree(v) // 2 - m for v in range(G.n)]
    if z is not None and z_ceil:
        l[z] = (G.degree(z) + 1) // 2 - m
    return tuple(max(0, x) for x in l)


@dataclass(frozen=True)
class BasicDecomposition:
    H: frozenset
    rest: frozenset  # E minus (H and M0)
    orientation: Orientation  # out-degree >= demand on rest
    demand: tuple
    inner: Decomposition


def _check_hypotheses(G, m, M, M0):
    if m < 1:
        raise InvalidInput("m must be at least 1")
    lam = edge_connectivity(G)
    if lam < 2 * m:
        raise PreconditionUnmet(f"graph is not {2 * m}-edge-connected (edge connectivity {lam})")
    if M & M0:
        raise PreconditionUnmet("M and M0 must be disjoint")
    if any(G.is_loop(e) for e in M | M0):
        raise PreconditionUnmet("M and M0 must be loopless")
    if M and max(G.degrees_in(M)) > m:
        raise PreconditionUnmet(f"max degree of M exceeds {m}")
    if len(M0) > m:
        raise PreconditionUnmet(f"M0 has more than {m} edges")


def basic_decomposition(G: Multigraph, m: int, M=(), M0=(), z=None) -> BasicDecomposition:
    """m-tree-connected ``H`` with ``M`` in and ``M0`` out, and the remainder
    oriented with ``d+(v) >= floor(d(v)/2) - m`` (ceil at ``z``)."""
    M, M0 = G.check_subset(M), G.check_subset(M0)
    if z is not None:
        G.check_vertices([z])
    _check_hypotheses(G, m, M, M0)
    l = split_demand(G, m, z)
    ground = G.complement(M0)
    try:
        dec = decompose_partition_connected(G, m, l, M, within=ground)
    except PreconditionUnmet as exc:
        raise ContractViolation(f"guaranteed decomposition not found: {exc}", exc.witness) from exc
    return BasicDecomposition(dec.H, dec.rest, dec.orientation, l, dec)


def orient_arborescence(G: Multigraph, tree, root):
    """``{edge: head}`` orienting the spanning tree ``tree`` away from ``root``."""
    adj = [[] for _ in range(G.n)]
    for e in sorted(tree):
        u, v = G.edges[e]
        adj[u].append(e)
        adj[v].append(e)
    heads = {}
    seen = {root}
    stack = [root]
    while stack:
        x = stack.pop()
        for e in adj[x]:
            y = G.other(e, x)
            if y not in seen:
                seen.add(y)
                heads[e] = y
                stack.append(y)
    return heads


@dataclass(frozen=True)
class ExtendedOrientation:
    F: frozenset
    orientation: Orientation
    trees: tuple
    roots: tuple
    M0_extra: frozenset  # the loopless factor M0' with d-(v) = r(v)


def extend_preorientation(G: Multigraph, m: int, M=(), M0: Mapping[int, int] | None = None, r=0, z=None):
    """Extend the pre-oriented ``M0`` (``{edge: head}``) to all of ``G`` with
    ``d+(v) <= ceil(d(v)/2)`` (``floor`` at ``z``), plus an m-tree-connected
    ``F`` (``M`` in, ``M0`` out) with ``d-_F(v) = m - r(v) - d-_M0(v)``.
    """
    M0 = dict(M0 or {})
    M = G.check_subset(M)
    M0set = G.check_subset(M0)
    r = as_vertex_map(G, r, "r")
    if any(x < 0 for x in r):
        raise InvalidInput("r must be nonnegative")
    if sum(r) != m - len(M0set):
        raise InvalidInput(f"sum of r is {sum(r)}, expected m - |M0| = {m - len(M0set)}")
    if z is not None:
        G.check_vertices([z])
    _check_hypotheses(G, m, M, M0set)
    pre = Orientation.from_heads(G, M0)

    # M0': r(v) edges pointing into v, outside M and M0
    spare = [e for e in range(G.m) if e not in M and e not in M0set and not G.is_loop(e)]
    owner, load = assign_ends(G, spare, r)
    if sum(load) < sum(r):
        raise PreconditionUnmet("no loopless factor realizes the in-degrees r outside M and M0")
    extra = frozenset(owner)
    basic = basic_decomposition(G, m, M, M0set | extra, z)
    F = basic.H
    trees = basic.inner.trees.trees
    if not M <= frozenset().union(*trees):
        raise AssertionError("M escaped the tree packing")

    heads = dict(M0)
    heads.update(owner)
    # the rest carries out-degree demands; reversed it carries in-degree demands
    rest_o = basic.orientation.reversed(basic.rest)
    for e in basic.rest:
        heads[e] = rest_o.head(e)
    ind_m0 = pre.in_degrees(M0set)
    roots = []
    for v in range(G.n):
        roots += [v] * (r[v] + ind_m0[v])
    for tree, root in zip(trees, roots):
        heads.update(orient_arborescence(G, tree, root))
    O = Orientation.from_heads(G, heads)
    return ExtendedOrientation(F, O, trees, tuple(roots), extra)
