"""Independent verifier: recomputes every contract clause from ``(G, H, C)``.

Nothing here reuses construction state.  Tree-connectivity is decided with
``tree_packing`` and the returned certificate is re-checked with a local
union-find, so a wrong packing cannot pass silently.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..connectivity import tree_packing
from ..contract import FactorContract
from ..graph import Multigraph


@dataclass(frozen=True)
class Verdict:
    ok: bool
    failures: tuple = ()

    def __bool__(self):
        return self.ok

    def to_dict(self):
        return {"ok": self.ok, "failures": list(self.failures)}


def _is_spanning_tree(G, tree):
    if len(tree) != max(G.n - 1, 0):
        return False
    parent = list(range(G.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in tree:
        u, v = G.edges[e]
        a, b = find(u), find(v)
        if a == b:
            return False
        parent[a] = b
    return True


def certified_tree_connected(G: Multigraph, m: int, edges) -> bool:
    """Whether the factor on ``edges`` holds ``m`` disjoint spanning trees,
    with the certificate re-checked here."""
    if m <= 0:
        return True
    edges = frozenset(edges)
    packing = tree_packing(G, m, within=edges)
    if packing is None:
        return False
    used = set()
    for t in packing.trees:
        if not t <= edges or used & t or not _is_spanning_tree(G, t):
            raise AssertionError("tree packing certificate failed re-verification")
        used |= t
    return True


def _bipartite(G, H):
    color = {}
    adj = [[] for _ in range(G.n)]
    for e in H:
        u, v = G.edges[e]
        if u == v:
            return False
        adj[u].append(v)
        adj[v].append(u)
    for s in range(G.n):
        if s in color:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in color:
                    color[y] = 1 - color[x]
                    stack.append(y)
                elif color[y] == color[x]:
                    return False
    return True


def verify(G: Multigraph, H, C: FactorContract) -> Verdict:
    """Every failed clause of ``C`` for the factor ``H`` (empty list = pass)."""
    H = frozenset(int(e) for e in H)
    failures = []
    if any(not 0 <= e < G.m for e in H):
        return Verdict(False, ("edges outside the graph",))
    if not C.include <= H:
        failures.append(f"missing included edges {sorted(C.include - H)}")
    if C.exclude & H:
        failures.append(f"contains excluded edges {sorted(C.exclude & H)}")
    deg = [0] * G.n
    for e in H:
        u, v = G.edges[e]
        deg[u] += 1
        deg[v] += 1
    for v in range(G.n):
        d = deg[v]
        if C.g is not None and d < C.g[v]:
            failures.append(f"degree {d} < g={C.g[v]} at vertex {v}")
        if C.f is not None and d > C.f[v]:
            failures.append(f"degree {d} > f={C.f[v]} at vertex {v}")
        if C.lists is not None and C.lists[v] is not None and d not in C.lists[v]:
            failures.append(f"degree {d} not in list at vertex {v}")
        if C.mod is not None and (d - C.mod.res[v]) % C.mod.k:
            failures.append(f"degree {d} not {C.mod.res[v]} mod {C.mod.k} at vertex {v}")
    if C.m and not certified_tree_connected(G, C.m, H):
        failures.append(f"factor is not {C.m}-tree-connected")
    if C.m0 and not certified_tree_connected(G, C.m0, frozenset(range(G.m)) - H):
        failures.append(f"complement is not {C.m0}-tree-connected")
    if C.bipartite and not _bipartite(G, H):
        failures.append("factor is not bipartite")
    return Verdict(not failures, tuple(failures))


def verify_family(G: Multigraph, factors, C: FactorContract, nonbipartite=False) -> Verdict:
    """Each factor meets ``C``, the factors are pairwise edge-disjoint, and
    (optionally) none of them is bipartite."""
    failures = []
    seen = set()
    for i, H in enumerate(factors):
        H = frozenset(H)
        if seen & H:
            failures.append(f"factor {i} shares edges {sorted(seen & H)}")
        seen |= H
        failures += [f"factor {i}: {msg}" for msg in verify(G, H, C).failures]
        if nonbipartite and _bipartite(G, H):
            failures.append(f"factor {i} is bipartite")
    return Verdict(not failures, tuple(failures))
