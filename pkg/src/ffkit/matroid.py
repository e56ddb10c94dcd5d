"""Matroid partitioning (Edmonds) over the edge set of a multigraph.

Two matroids are needed: the graphic matroid (forests) and the "demand"
matroid whose independent sets are edge sets that can each be charged to one
of their ends without exceeding a per-vertex capacity.  A full-rank union of
``m`` graphic matroids and one demand matroid with capacity ``l`` is exactly an
``(m, l)``-partition-connected decomposition: ``m`` disjoint spanning trees
plus edges that can be oriented out of every vertex ``l(v)`` times.
"""

from __future__ import annotations

from collections import deque


def assign_ends(G, edges, cap, allowed=None):
    """Maximum charging of ``edges`` to their ends with vertex capacities ``cap``.

    Kuhn-style augmenting paths, edges processed in the given order.
    Returns ``(owner, load)`` where ``owner`` maps each charged edge to a vertex.
    """
    owner = {}
    load = [0] * G.n
    charged = [[] for _ in range(G.n)]

    def attach(e, w):
        owner[e] = w
        load[w] += 1
        charged[w].append(e)

    def detach(e, w):
        charged[w].remove(e)
        load[w] -= 1

    def move(y, w, seen):
        # recharge y from w to its other end, freeing one slot at w
        x = G.other(y, w)
        if x == w:
            return False
        if load[x] < cap[x]:
            detach(y, w)
            attach(y, x)
            return True
        if x in seen:
            return False
        seen.add(x)
        for y2 in list(charged[x]):
            if move(y2, x, seen):
                detach(y, w)
                attach(y, x)
                return True
        return False

    def place(e):
        u, v = G.edges[e]
        ends = (u,) if u == v else (u, v)
        for w in ends:
            if load[w] < cap[w]:
                attach(e, w)
                return True
        seen = set()
        for w in ends:
            if w in seen:
                continue
            seen.add(w)
            for y in list(charged[w]):
                if move(y, w, seen):
                    attach(e, w)
                    return True
        return False

    for e in edges:
        if allowed is not None and e not in allowed:
            continue
        place(e)
    return owner, load


def unreachable_deficit(G, owner, load, cap, edges):
    """After a maximum charging, a vertex set ``U`` whose capacity exceeds the
    number of ``edges`` touching it (a Hakimi-type violated cut), or None."""
    short = [v for v in range(G.n) if load[v] < cap[v]]
    if not short:
        return None
    charged = [[] for _ in range(G.n)]
    for e, w in owner.items():
        charged[w].append(e)
    incident = [[] for _ in range(G.n)]
    for e in edges:
        u, v = G.edges[e]
        incident[u].append(e)
        if v != u:
            incident[v].append(e)
    # vertices that could hand a slot to a short vertex by re-charging edges
    U = set(short)
    queue = deque(short)
    while queue:
        w = queue.popleft()
        for e in incident[w]:
            x = owner.get(e)
            if x is not None and x not in U:
                U.add(x)
                queue.append(x)
    return frozenset(U)


class GraphicMatroid:
    """Forests of ``G``; ``allowed`` restricts the ground set."""

    def __init__(self, G, allowed=None):
        self.G = G
        self.allowed = allowed
        self.members = set()
        self._rebuild()

    def reset(self, members):
        self.members = set(members)
        self._rebuild()

    def _rebuild(self):
        G = self.G
        adj = [[] for _ in range(G.n)]
        for e in self.members:
            u, v = G.edges[e]
            adj[u].append((v, e))
            adj[v].append((u, e))
        parent = [-1] * G.n
        pedge = [-1] * G.n
        depth = [0] * G.n
        comp = [-1] * G.n
        seen_edges = 0
        for s in range(G.n):
            if comp[s] >= 0:
                continue
            comp[s] = s
            stack = [s]
            while stack:
                x = stack.pop()
                for y, e in adj[x]:
                    if e == pedge[x]:
                        continue
                    if comp[y] >= 0:
                        raise AssertionError("graphic matroid member set is not a forest")
                    comp[y] = s
                    parent[y] = x
                    pedge[y] = e
                    depth[y] = depth[x] + 1
                    seen_edges += 1
                    stack.append(y)
        if seen_edges != len(self.members):
            raise AssertionError("graphic matroid member set is not a forest")
        self.parent, self.pedge, self.depth, self.comp = parent, pedge, depth, comp

    def exchange(self, x):
        """None if members + x is a forest, else the members on the cycle it closes."""
        if self.allowed is not None and x not in self.allowed:
            return []
        u, v = self.G.edges[x]
        if u == v:
            return []
        if self.comp[u] != self.comp[v]:
            return None
        path = []
        while u != v:
            if self.depth[u] >= self.depth[v]:
                path.append(self.pedge[u])
                u = self.parent[u]
            else:
                path.append(self.pedge[v])
                v = self.parent[v]
        return path


class DemandMatroid:
    """Edge sets chargeable to their ends with at most ``cap[v]`` edges per vertex."""

    def __init__(self, G, cap, allowed=None):
        self.G = G
        self.cap = list(cap)
        self.allowed = allowed
        self.members = set()
        self.owner = {}
        self.load = [0] * G.n

    def reset(self, members):
        owner, load = assign_ends(self.G, sorted(members), self.cap)
        if len(owner) != len(members):
            raise AssertionError("demand matroid member set is not independent")
        self.members = set(members)
        self.owner, self.load = owner, load

    def exchange(self, x):
        if self.allowed is not None and x not in self.allowed:
            return []
        G = self.G
        u, v = G.edges[x]
        charged = [[] for _ in range(G.n)]
        for e, w in self.owner.items():
            charged[w].append(e)
        reach = {u, v}
        queue = deque(reach)
        while queue:
            w = queue.popleft()
            if self.load[w] < self.cap[w]:
                return None
            for e in charged[w]:
                y = G.other(e, w)
                if y not in reach:
                    reach.add(y)
                    queue.append(y)
        return sorted(e for e, w in self.owner.items() if w in reach)


def matroid_partition(matroids, order, stop=None):
    """Greedy matroid partitioning with shortest augmenting paths.

    ``order`` lists ground-set elements in insertion priority; an element that
    cannot be covered is skipped for good (the union is a matroid, so greedy
    insertion reaches a maximum).  ``stop(sets)`` may end the scan early.
    Returns the list of member sets, one per matroid.
    """
    sets = [set() for _ in matroids]
    owner = {}
    for x in order:
        if x in owner:
            continue
        if _augment(matroids, sets, owner, x):
            if stop is not None and stop(sets):
                break
    return sets


def _augment(matroids, sets, owner, x):
    label = {x: None}
    queue = deque([x])
    while queue:
        a = queue.popleft()
        here = owner.get(a)
        for i, mat in enumerate(matroids):
            if i == here:
                continue
            out = mat.exchange(a)
            if out is None:
                _apply(matroids, sets, owner, label, a, i)
                return True
            for y in out:
                if y not in label:
                    label[y] = (a, i)
                    queue.append(y)
    return False


def _apply(matroids, sets, owner, label, a, i):
    touched = set()
    while True:
        j = owner.get(a)
        if j is not None:
            sets[j].discard(a)
            touched.add(j)
        sets[i].add(a)
        owner[a] = i
        touched.add(i)
        if label[a] is None:
            break
        # a was displaced from j by its predecessor, which now enters j
        prev, target = label[a]
        a, i = prev, target
    for t in touched:
        matroids[t].reset(sets[t])
