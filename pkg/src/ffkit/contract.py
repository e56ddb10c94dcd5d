"""FactorContract: one record for every degree constraint a factor may carry."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import InvalidInput
from .graph import Multigraph, ResidueTarget

CONTRACT_FORMAT = "ffc-1"


@dataclass(frozen=True)
class FactorContract:
    """Absent (None) fields are unconstrained.

    ``bipartite`` asks the factor itself to be bipartite; it is the one clause
    beyond degrees and tree-connectivity (needed for bipartite Eulerian factors).
    """

    include: frozenset = frozenset()
    exclude: frozenset = frozenset()
    g: tuple | None = None
    f: tuple | None = None
    lists: tuple | None = None  # per vertex frozenset, or None for "no list"
    mod: ResidueTarget | None = None
    m: int = 0
    m0: int = 0
    bipartite: bool = False

    def __post_init__(self):
        object.__setattr__(self, "include", frozenset(int(i) for i in self.include))
        object.__setattr__(self, "exclude", frozenset(int(i) for i in self.exclude))
        if self.include & self.exclude:
            raise InvalidInput("include and exclude sets overlap")
        for name in ("g", "f"):
            val = getattr(self, name)
            if val is not None:
                object.__setattr__(self, name, tuple(int(x) for x in val))
        if self.lists is not None:
            object.__setattr__(
                self, "lists", tuple(None if L is None else frozenset(int(x) for x in L) for L in self.lists)
            )
        if self.m < 0 or self.m0 < 0:
            raise InvalidInput("tree-connectivity demands must be nonnegative")

    def check(self, G: Multigraph):
        """Validate against a host graph; returns self for chaining."""
        G.check_subset(self.include | self.exclude)
        for name in ("g", "f", "lists"):
            val = getattr(self, name)
            if val is not None and len(val) != G.n:
                raise InvalidInput(f"contract field {name} has {len(val)} entries for {G.n} vertices")
        if self.g is not None and self.f is not None and any(a > b for a, b in zip(self.g, self.f)):
            raise InvalidInput("contract has g(v) > f(v)")
        if self.lists is not None:
            for v, L in enumerate(self.lists):
                if L is not None and any(x < 0 or x > G.degree(v) for x in L):
                    raise InvalidInput(f"list at vertex {v} leaves [0, d(v)]")
        if self.mod is not None:
            self.mod.check(G)
        return self

    def degree_ok(self, v, d):
        if self.g is not None and d < self.g[v]:
            return False
        if self.f is not None and d > self.f[v]:
            return False
        if self.lists is not None and self.lists[v] is not None and d not in self.lists[v]:
            return False
        if self.mod is not None and (d - self.mod.res[v]) % self.mod.k:
            return False
        return True

    def allowed_masks(self, G: Multigraph):
        """Per-vertex bitmask of admissible degrees within ``[0, d_G(v)]``."""
        masks = []
        for v in range(G.n):
            bits = 0
            for d in range(G.degree(v) + 1):
                if self.degree_ok(v, d):
                    bits |= 1 << d
            masks.append(bits)
        return masks

    @property
    def has_structure(self):
        return self.m > 0 or self.m0 > 0 or self.bipartite

    def to_dict(self):
        out = {"format": CONTRACT_FORMAT}
        if self.include:
            out["include"] = sorted(self.include)
        if self.exclude:
            out["exclude"] = sorted(self.exclude)
        if self.g is not None:
            out["g"] = list(self.g)
        if self.f is not None:
            out["f"] = list(self.f)
        if self.lists is not None:
            out["lists"] = {str(v): sorted(L) for v, L in enumerate(self.lists) if L is not None}
        if self.mod is not None:
            out["mod"] = {"k": self.mod.k, "res": list(self.mod.res)}
        if self.m:
            out["m"] = self.m
        if self.m0:
            out["m0"] = self.m0
        if self.bipartite:
            out["bipartite"] = True
        return out

    def to_json(self):
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data, n=None):
        if data.get("format") != CONTRACT_FORMAT:
            raise InvalidInput(f"expected format {CONTRACT_FORMAT!r}")
        lists = None
        if "lists" in data:
            raw = data["lists"]
            size = n if n is not None else 1 + max((int(v) for v in raw), default=-1)
            lists = [None] * size
            for v, L in raw.items():
                lists[int(v)] = L
        mod = None
        if "mod" in data:
            mod = ResidueTarget(int(data["mod"]["k"]), tuple(data["mod"]["res"]))
        try:
            return cls(
                include=frozenset(data.get("include", ())),
                exclude=frozenset(data.get("exclude", ())),
                g=data.get("g"),
                f=data.get("f"),
                lists=lists,
                mod=mod,
                m=int(data.get("m", 0)),
                m0=int(data.get("m0", 0)),
                bipartite=bool(data.get("bipartite", False)),
            )
        except (TypeError, KeyError) as exc:
            raise InvalidInput(f"malformed contract: {exc}") from exc

    @classmethod
    def from_json(cls, text, n=None):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"contract is not valid JSON: {exc}") from exc
        return cls.from_dict(data, n)
