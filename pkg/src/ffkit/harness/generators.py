"""Deterministic graph families for corpora and the CLI."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from ..errors import InvalidInput
from ..graph import Multigraph

FAMILIES = (
    "complete",
    "complete-bipartite",
    "circulant",
    "dipole",
    "multiplied",
    "random-regular-multigraph",
    "union-of-hamilton-cycles",
    "petersen",
)


def _int(params, key, default=None):
    if key not in params:
        if default is None:
            raise InvalidInput(f"missing parameter {key!r}")
        return default
    try:
        return int(params[key])
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"parameter {key!r} must be an integer") from exc


def complete(n):
    return Multigraph(n, tuple(combinations(range(n), 2)))


def complete_bipartite(a, b):
    return Multigraph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def circulant(n, offsets):
    steps = set(int(o) % n for o in offsets)
    if 0 in steps:
        raise InvalidInput("circulant offsets must be nonzero mod n")
    edges = []
    for s in sorted(steps):
        if 2 * s == n:
            edges += [(i, i + s) for i in range(s)]  # antipodal offset: one edge per pair
        elif s < n - s or n - s not in steps:
            edges += [tuple(sorted((i, (i + s) % n))) for i in range(n)]
    return Multigraph(n, tuple(edges))


def dipole(w):
    return Multigraph(2, ((0, 1),) * w)


def multiplied(G: Multigraph, t):
    return Multigraph(G.n, tuple(e for e in G.edges for _ in range(t)))


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Multigraph(10, tuple(tuple(sorted(e)) for e in outer + spokes + inner))


def random_regular_multigraph(n, r, seed):
    """Configuration-model ``r``-regular multigraph without loops (parallel edges allowed)."""
    if n < 2 or (n * r) % 2:
        raise InvalidInput("need n >= 2 and n*r even")
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n), r)
    for _ in range(1000):
        perm = rng.permutation(stubs)
        pairs = perm.reshape(-1, 2)
        if np.all(pairs[:, 0] != pairs[:, 1]):
            edges = sorted(tuple(sorted(map(int, p))) for p in pairs)
            return Multigraph(n, tuple(edges))
    raise InvalidInput("could not draw a loopless configuration")


def union_of_hamilton_cycles(n, h, seed):
    """Union of ``h`` random Hamilton cycles: a ``2h``-regular multigraph."""
    if n < 3:
        raise InvalidInput("need n >= 3")
    rng = np.random.default_rng(seed)
    edges = []
    for _ in range(h):
        order = [int(x) for x in rng.permutation(n)]
        edges += [tuple(sorted((order[i], order[(i + 1) % n]))) for i in range(n)]
    return Multigraph(n, tuple(sorted(edges)))


def generate(family: str, params=None, seed=0) -> Multigraph:
    """Graph of ``family`` with integer ``params``; deterministic in ``seed``.

    ``multiplied`` takes ``base`` (another family name), ``t`` and the base's
    own parameters.
    """
    params = dict(params or {})
    if family == "complete":
        return complete(_int(params, "n"))
    if family == "complete-bipartite":
        return complete_bipartite(_int(params, "a"), _int(params, "b"))
    if family == "circulant":
        offsets = params.get("offsets", (1,))
        if isinstance(offsets, str):
            offsets = [int(x) for x in offsets.replace(";", " ").replace("/", " ").split()]
        return circulant(_int(params, "n"), offsets)
    if family == "dipole":
        return dipole(_int(params, "width") if "width" in params else _int(params, "n"))
    if family == "multiplied":
        base = params.pop("base", None)
        if base is None or base == "multiplied":
            raise InvalidInput("multiplied needs a base family")
        t = _int(params, "t")
        params.pop("t")
        return multiplied(generate(base, params, seed), t)
    if family == "random-regular-multigraph":
        return random_regular_multigraph(_int(params, "n"), _int(params, "r"), seed)
    if family == "union-of-hamilton-cycles":
        return union_of_hamilton_cycles(_int(params, "n"), _int(params, "h"), seed)
    if family == "petersen":
        return petersen()
    raise InvalidInput(f"unknown family {family!r}; known: {', '.join(FAMILIES)}")


def parse_params(text):
    """``"k=v,k2=v2"`` -> dict; values stay strings except plain integers."""
    out = {}
    if not text:
        return out
    for item in text.split(","):
        if not item.strip():
            continue
        if "=" not in item:
            raise InvalidInput(f"parameter {item!r} is not key=value")
        key, val = item.split("=", 1)
        val = val.strip()
        out[key.strip()] = int(val) if val.lstrip("-").isdigit() else val
    return out
