"""Multigraph core: edge-id based representation, degree and cut accounting.

Vertices are ``0..n-1``; the edge id is its position in ``edges``.  Loops and
parallel edges are allowed, a loop adds 2 to the degree of its vertex.
Factors are plain ``frozenset`` objects of edge ids.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import InvalidInput

GRAPH_FORMAT = "ffg-1"
ORIENTATION_FORMAT = "ffo-1"
FACTOR_FORMAT = "fff-1"

EdgeSubset = frozenset


@dataclass(frozen=True)
class Multigraph:
    n: int
    edges: tuple

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 0:
            raise InvalidInput(f"vertex count must be a nonnegative integer, got {self.n!r}")
        edges = []
        for e in self.edges:
            if len(e) != 2:
                raise InvalidInput(f"edge {e!r} is not a pair")
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidInput(f"edge {e!r} has an endpoint outside 0..{self.n - 1}")
            edges.append((u, v))
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", tuple(edges))

    @classmethod
    def from_edges(cls, n, edges):
        return cls(n, tuple(edges))

    @property
    def m(self):
        return len(self.edges)

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"Multigraph(n={self.n}, |E|={self.m})"

    @cached_property
    def incidence(self):
        """Per-vertex list of incident edge ids (a loop appears once)."""
        inc = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            if v != u:
                inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def degrees(self):
        return tuple(self.degrees_in(range(self.m)))

    def degree(self, v):
        return self.degrees[v]

    @property
    def max_degree(self):
        return max(self.degrees, default=0)

    def other(self, e, v):
        u, w = self.edges[e]
        return w if u == v else u

    def is_loop(self, e):
        u, v = self.edges[e]
        return u == v

    def loops(self):
        return frozenset(i for i, (u, v) in enumerate(self.edges) if u == v)

    def degrees_in(self, subset):
        """Degree sequence of the factor spanned by ``subset``."""
        deg = [0] * self.n
        for i in subset:
            u, v = self.edges[i]
            deg[u] += 1
            deg[v] += 1
        return deg

    @cached_property
    def incidence_matrix(self):
        """``|E| x n`` int array; a loop has a 2 in its row."""
        mat = np.zeros((self.m, self.n), dtype=np.int64)
        for i, (u, v) in enumerate(self.edges):
            mat[i, u] += 1
            mat[i, v] += 1
        return mat

    @cached_property
    def endpoints(self):
        if self.m == 0:
            return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
        arr = np.asarray(self.edges, dtype=np.int64)
        return arr[:, 0], arr[:, 1]

    def check_subset(self, subset) -> frozenset:
        s = frozenset(int(i) for i in subset)
        bad = [i for i in s if not 0 <= i < self.m]
        if bad:
            raise InvalidInput(f"edge ids {sorted(bad)} do not exist (|E|={self.m})")
        return s

    def check_vertices(self, A) -> frozenset:
        s = frozenset(int(v) for v in A)
        bad = [v for v in s if not 0 <= v < self.n]
        if bad:
            raise InvalidInput(f"vertices {sorted(bad)} out of range 0..{self.n - 1}")
        return s

    def complement(self, subset):
        subset = frozenset(subset)
        return frozenset(i for i in range(self.m) if i not in subset)

    def edge_subgraph(self, subset):
        """Spanning subgraph on ``subset``; returns ``(graph, ids)`` with ``ids[new] = old``."""
        ids = tuple(sorted(self.check_subset(subset)))
        return Multigraph(self.n, tuple(self.edges[i] for i in ids)), ids

    def components(self, subset=None):
        """Connected components (as sorted vertex tuples) of the factor on ``subset``."""
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i in range(self.m) if subset is None else subset:
            u, v = self.edges[i]
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        groups = {}
        for v in range(self.n):
            groups.setdefault(find(v), []).append(v)
        return sorted(tuple(g) for g in groups.values())

    def is_connected(self, subset=None):
        return len(self.components(subset)) <= 1

    # serialization -------------------------------------------------------

    def to_dict(self):
        return {"format": GRAPH_FORMAT, "n": self.n, "edges": [list(e) for e in self.edges]}

    def to_json(self):
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data):
        if data.get("format") != GRAPH_FORMAT:
            raise InvalidInput(f"expected format {GRAPH_FORMAT!r}, got {data.get('format')!r}")
        try:
            return cls(int(data["n"]), tuple(tuple(e) for e in data["edges"]))
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed graph document: {exc}") from exc

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"not JSON: {exc}") from exc
        return cls.from_dict(data)


@dataclass(frozen=True)
class Bipartition:
    X: frozenset
    Y: frozenset

    def __post_init__(self):
        object.__setattr__(self, "X", frozenset(self.X))
        object.__setattr__(self, "Y", frozenset(self.Y))

    @classmethod
    def from_side(cls, G, X):
        X = G.check_vertices(X)
        return cls(X, frozenset(range(G.n)) - X)

    def validate(self, G):
        G.check_vertices(self.X | self.Y)
        if self.X & self.Y:
            raise InvalidInput(f"bipartition sides intersect in {sorted(self.X & self.Y)}")
        if len(self.X | self.Y) != G.n:
            raise InvalidInput("bipartition does not cover every vertex")
        return self

    def side(self, v):
        return 0 if v in self.X else 1


@dataclass(frozen=True)
class ResidueTarget:
    k: int
    res: tuple

    def __post_init__(self):
        if int(self.k) < 1:
            raise InvalidInput(f"modulus must be positive, got {self.k}")
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "res", tuple(int(r) % int(self.k) for r in self.res))

    @classmethod
    def constant(cls, n, k, value=0):
        return cls(k, (value,) * n)

    def check(self, G):
        if len(self.res) != G.n:
            raise InvalidInput(f"residue map has {len(self.res)} entries for {G.n} vertices")
        return self

    def shifted(self, degrees):
        """Residues of ``f - degrees`` (mod k)."""
        return ResidueTarget(self.k, tuple(r - d for r, d in zip(self.res, degrees)))


def chi(n, z):
    """Indicator map of vertex ``z``."""
    return tuple(1 if v == z else 0 for v in range(n))


def chi_bar(n, z):
    return tuple(0 if v == z else 1 for v in range(n))


@dataclass(frozen=True)
class Orientation:
    """Total orientation of ``graph``; ``forward[e]`` means tail = edges[e][0].

    Degree queries can be restricted to an edge subset, which is how partial
    orientations (of a factor of the host graph) are expressed.
    """

    graph: Multigraph
    forward: tuple = field(default=None)

    def __post_init__(self):
        fwd = (True,) * self.graph.m if self.forward is None else tuple(bool(b) for b in self.forward)
        if len(fwd) != self.graph.m:
            raise InvalidInput(f"orientation has {len(fwd)} entries for {self.graph.m} edges")
        object.__setattr__(self, "forward", fwd)

    @classmethod
    def from_heads(cls, G, heads: Mapping[int, int], default=None):
        """Orientation in which each edge in ``heads`` points into the given vertex."""
        fwd = list(default.forward) if default is not None else [True] * G.m
        for e, h in heads.items():
            u, v = G.edges[e]
            if h not in (u, v):
                raise InvalidInput(f"vertex {h} is not an end of edge {e}")
            fwd[e] = h == v
        return cls(G, tuple(fwd))

    def tail(self, e):
        u, v = self.graph.edges[e]
        return u if self.forward[e] else v

    def head(self, e):
        u, v = self.graph.edges[e]
        return v if self.forward[e] else u

    def arcs(self, subset=None):
        idx = range(self.graph.m) if subset is None else sorted(subset)
        return [(e, self.tail(e), self.head(e)) for e in idx]

    def out_degrees(self, subset=None):
        out = [0] * self.graph.n
        for e in range(self.graph.m) if subset is None else subset:
            out[self.tail(e)] += 1
        return out

    def in_degrees(self, subset=None):
        ind = [0] * self.graph.n
        for e in range(self.graph.m) if subset is None else subset:
            ind[self.head(e)] += 1
        return ind

    def reversed(self, subset=None):
        sub = range(self.graph.m) if subset is None else frozenset(subset)
        fwd = list(self.forward)
        for e in sub:
            fwd[e] = not fwd[e]
        return Orientation(self.graph, tuple(fwd))

    def merged(self, other, subset):
        """Copy of self taking the orientation of ``subset`` from ``other``."""
        fwd = list(self.forward)
        for e in subset:
            fwd[e] = other.forward[e]
        return Orientation(self.graph, tuple(fwd))

    def to_dict(self):
        return {"format": ORIENTATION_FORMAT, "forward": list(self.forward)}

    def to_json(self):
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, G, data):
        if data.get("format") != ORIENTATION_FORMAT:
            raise InvalidInput(f"expected format {ORIENTATION_FORMAT!r}")
        return cls(G, tuple(data["forward"]))


def factor_to_dict(H):
    return {"format": FACTOR_FORMAT, "edges": sorted(int(i) for i in H)}


def factor_from_dict(data):
    if data.get("format") != FACTOR_FORMAT:
        raise InvalidInput(f"expected format {FACTOR_FORMAT!r}")
    return frozenset(int(i) for i in data["edges"])


def cut_counts(G: Multigraph, A: Iterable[int]):
    """``(d_G(A), e_G(A))``: edges leaving ``A`` and edges with both ends in ``A``.

    Loops at a vertex of ``A`` count inside, never on the boundary.
    """
    A = G.check_vertices(A)
    boundary = inside = 0
    for u, v in G.edges:
        a, b = u in A, v in A
        if a and b:
            inside += 1
        elif a or b:
            boundary += 1
    return boundary, inside


def edges_between(G: Multigraph, A, B, subset=None):
    """Number of edges with one end in ``A`` and the other in ``B`` (disjoint sets)."""
    A, B = frozenset(A), frozenset(B)
    count = 0
    for i in range(G.m) if subset is None else subset:
        u, v = G.edges[i]
        if (u in A and v in B) or (u in B and v in A):
            count += 1
    return count


@dataclass(frozen=True)
class InducedSubgraph:
    graph: Multigraph
    vertices: tuple  # new vertex i is vertices[i] in the host
    edge_ids: tuple  # new edge j is edge_ids[j] in the host


def induced(G: Multigraph, A: Iterable[int]) -> InducedSubgraph:
    A = G.check_vertices(A)
    if not A:
        raise InvalidInput("induced subgraph needs a nonempty vertex set")
    verts = tuple(sorted(A))
    relabel = {v: i for i, v in enumerate(verts)}
    ids, edges = [], []
    for i, (u, v) in enumerate(G.edges):
        if u in A and v in A:
            ids.append(i)
            edges.append((relabel[u], relabel[v]))
    return InducedSubgraph(Multigraph(len(verts), tuple(edges)), verts, tuple(ids))


def bipartite_factor(G: Multigraph, P: Bipartition) -> frozenset:
    """Edges of ``G[X, Y]``: exactly one end on each side."""
    P.validate(G)
    return frozenset(i for i, (u, v) in enumerate(G.edges) if (u in P.X) != (v in P.X))


def inside_edges(G: Multigraph, P: Bipartition, subset=None) -> frozenset:
    """Edges with both ends on the same side of ``P`` (loops included)."""
    idx = range(G.m) if subset is None else subset
    return frozenset(i for i in idx if (G.edges[i][0] in P.X) == (G.edges[i][1] in P.X))


def two_coloring(G: Multigraph, subset=None):
    """A proper 2-colouring of the factor on ``subset`` as a Bipartition, or None.

    Isolated components are put on the X side from their smallest vertex.
    """
    idx = range(G.m) if subset is None else subset
    adj = [[] for _ in range(G.n)]
    for i in idx:
        u, v = G.edges[i]
        if u == v:
            return None
        adj[u].append(v)
        adj[v].append(u)
    color = [-1] * G.n
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
                    return None
    X = frozenset(v for v in range(G.n) if color[v] == 0)
    return Bipartition(X, frozenset(range(G.n)) - X)


def is_bipartite(G: Multigraph, subset=None) -> bool:
    return two_coloring(G, subset) is not None


def as_vertex_map(G: Multigraph, values, name="map", default=None):
    """Normalize a vertex-indexed int map (sequence, dict or scalar) to a tuple."""
    if values is None:
        if default is None:
            raise InvalidInput(f"{name} is required")
        values = default
    if isinstance(values, (int, np.integer)):
        return (int(values),) * G.n
    if isinstance(values, Mapping):
        return tuple(int(values.get(v, 0)) for v in range(G.n))
    values = tuple(int(x) for x in values)
    if len(values) != G.n:
        raise InvalidInput(f"{name} has {len(values)} entries for {G.n} vertices")
    return values


def as_list_family(G: Multigraph, lists) -> tuple:
    if isinstance(lists, Mapping):
        return tuple(frozenset(int(x) for x in lists.get(v, ())) for v in range(G.n))
    lists = tuple(frozenset(int(x) for x in L) for L in lists)
    if len(lists) != G.n:
        raise InvalidInput(f"list family has {len(lists)} entries for {G.n} vertices")
    return lists


def max_degree_in(G: Multigraph, subset: Sequence[int]) -> int:
    return max(G.degrees_in(subset), default=0)
