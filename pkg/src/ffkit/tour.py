"""Factor construction along a directed Eulerian tour.

The oriented graph is balanced by extra arcs ``M`` (deficit -> surplus), a
closed Eulerian tour of the balanced digraph is taken, and the factor is
grown edge by edge with a fixed rule list.  The result includes ``F``,
excludes ``F0`` and satisfies, at every vertex,

    d+(v) - d+_F0(v) - s0(v) <= d_H(v) <= d-(v) + d+_F(v) + s(v).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ContractViolation, PreconditionUnmet
from .graph import Multigraph, Orientation, as_vertex_map


@dataclass
class TourState:
    """``arcs[e] = (tail, head)``; ids ``>= n_graph`` are the added arcs ``M``."""

    n: int
    arcs: list
    n_graph: int
    M: list
    tour: list = field(default_factory=list)
    W: dict = field(default_factory=dict)  # v -> tour positions of omega_1(v), omega_2(v), ...
    succ: dict = field(default_factory=dict)  # v -> tour positions following W_v
    added: list = field(default_factory=list)  # added[i]: was tour[i] put into H

    def is_added_arc(self, e):
        return e >= self.n_graph

    def H(self, i=None):
        """Edge set of ``H_i`` (``H_t`` by default)."""
        i = len(self.added) if i is None else i
        return frozenset(self.tour[j] for j in range(i) if self.added[j])


def _surplus(O: Orientation):
    out, ind = O.out_degrees(), O.in_degrees()
    return [o - d for o, d in zip(out, ind)]


def balance_augment(G: Multigraph, O: Orientation) -> TourState:
    """Add arcs from in-surplus to out-surplus vertices until balanced.

    Pairs are formed greedily in vertex order, so ``d_M(v) = |d+(v) - d-(v)|``.
    """
    arcs = [(O.tail(e), O.head(e)) for e in range(G.m)]
    diff = _surplus(O)
    sources = [v for v in range(G.n) for _ in range(max(0, -diff[v]))]
    sinks = [v for v in range(G.n) for _ in range(max(0, diff[v]))]
    assert len(sources) == len(sinks)
    M = []
    for a, b in zip(sources, sinks):
        M.append(len(arcs))
        arcs.append((a, b))
    return TourState(G.n, arcs, G.m, M)


def eulerian_tour(n, arcs, start):
    """Closed directed Eulerian tour (list of arc ids) beginning with ``start``.

    Hierholzer with lowest-id-first successors; requires a balanced, connected digraph.
    """
    out = [[] for _ in range(n)]
    for e, (a, _) in enumerate(arcs):
        out[a].append(e)
    ptr = [0] * n
    stack = [(arcs[start][0], None)]
    circuit = []
    # force the first step through ``start``
    ptr_start = out[arcs[start][0]]
    ptr_start.remove(start)
    ptr_start.insert(0, start)
    while stack:
        v, arc = stack[-1]
        if ptr[v] < len(out[v]):
            e = out[v][ptr[v]]
            ptr[v] += 1
            stack.append((arcs[e][1], e))
        else:
            stack.pop()
            if arc is not None:
                circuit.append(arc)
    circuit.reverse()
    if len(circuit) != len(arcs):
        raise PreconditionUnmet("the balanced digraph is not connected")
    return circuit


def tour_factor(G: Multigraph, O: Orientation, F=(), F0=(), s=0, s0=0, state=False):
    """Factor ``H`` including ``F`` and excluding ``F0`` built along the tour.

    With ``state=True`` returns ``(H, TourState)``.  The degree bounds are
    asserted on the output; a miss raises ContractViolation.
    """
    F, F0 = G.check_subset(F), G.check_subset(F0)
    s, s0 = as_vertex_map(G, s, "s"), as_vertex_map(G, s0, "s0")
    if F & F0:
        raise PreconditionUnmet("F and F0 overlap")
    if not F | F0:
        raise PreconditionUnmet("F and F0 are both empty")
    if not G.is_connected():
        raise PreconditionUnmet("underlying graph is not connected")
    diff = _surplus(O)
    for v in range(G.n):
        if s[v] < 0 or s0[v] < 0:
            raise PreconditionUnmet(f"s or s0 negative at vertex {v}")
        if s[v] + s0[v] < diff[v]:
            raise PreconditionUnmet(f"s + s0 < d+ - d- at vertex {v}")

    T = balance_augment(G, O)
    start = min(F) if F else min(F0)
    T.tour = eulerian_tour(G.n, T.arcs, start)
    t = len(T.tour)
    Mset = set(T.M)
    fixed = F | F0

    def nxt(i):
        return T.tour[(i + 1) % t]

    for i, e in enumerate(T.tour):
        v = T.arcs[e][1]
        if e in Mset and diff[v] > 0 and nxt(i) not in fixed:
            T.W.setdefault(v, []).append(i)
    for v, pos in T.W.items():
        if len(pos) > max(0, diff[v]):
            raise AssertionError("|W_v| exceeds the surplus bound")
        T.succ[v] = [p + 1 for p in pos if p + 1 < t]
    rank = {p: (v, j + 1) for v, pos in T.W.items() for j, p in enumerate(pos)}

    inH = set()
    for i, e in enumerate(T.tour):
        prev = T.tour[i - 1] if i > 0 else None
        if e not in Mset and e not in fixed:
            if i > 0 and (i - 1) in rank:
                v, j = rank[i - 1]
                take = j > s0[v]
            else:
                take = prev not in inH
        elif e in F:
            take = True
        else:
            take = False
        T.added.append(take)
        if take:
            inH.add(e)

    H = frozenset(inH)
    bad = tour_bound_violations(G, O, H, F, F0, s, s0)
    if bad:
        raise ContractViolation(f"tour factor misses its degree bounds at {bad}", bad)
    return (H, T) if state else H


def tour_bounds(G, O, F, F0, s, s0):
    out, ind = O.out_degrees(), O.in_degrees()
    outF, out0 = O.out_degrees(F), O.out_degrees(F0)
    lo = [out[v] - out0[v] - s0[v] for v in range(G.n)]
    hi = [ind[v] + outF[v] + s[v] for v in range(G.n)]
    return lo, hi


def tour_bound_violations(G, O, H, F, F0, s, s0):
    """Vertices where ``H`` leaves the tour window, plus inclusion failures as ``-1``."""
    s, s0 = as_vertex_map(G, s, "s"), as_vertex_map(G, s0, "s0")
    lo, hi = tour_bounds(G, O, F, F0, s, s0)
    d = G.degrees_in(H)
    bad = [v for v in range(G.n) if not lo[v] <= d[v] <= hi[v]]
    if not frozenset(F) <= H or frozenset(F0) & H:
        bad.append(-1)
    return bad
