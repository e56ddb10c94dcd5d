"""Theorem audits over generated corpora.

An audit runs one pipeline over every (graph, setting) pair of a corpus,
re-verifies the output, cross-checks small instances against the brute-force
oracle, and collects rows into a report.  Rows are sorted by instance key and
serialized with sorted keys, so a fixed seed gives byte-identical JSON once
the ``wall_time`` field is left out.

Row outcomes:
    constructed         pipeline output passed the verifier
    precondition-unmet  a hypothesis failed (expected for some corpus graphs)
    finding             hypotheses held but the promise failed; witness attached
    recorded            a reported-only check failed (never asserted)
    checked             a check-only audit row that passed
    capacity            an enumeration cap was hit
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np

from .. import pipelines as P
from ..compat import bipartite_index, compatible
from ..connectivity import edge_connectivity
from ..contract import FactorContract
from ..errors import CapacityError, ContractViolation, FactorError, InvalidInput, PreconditionUnmet
from ..graph import Multigraph, ResidueTarget, two_coloring
from .generators import generate
from .equivalence import compare, instance
from .oracle import brute_force_bipartite_index, brute_force_search
from .verify import verify

REPORT_FORMAT = "ffa-1"
ORACLE_EDGE_CAP = 16


def _g(family, **params):
    return {"family": family, "params": params}


_EB = [
    _g("complete", n=5), _g("complete", n=6), _g("complete", n=7),
    *[_g("dipole", width=w) for w in range(4, 9)],
    _g("circulant", n=7, offsets="1 2"), _g("circulant", n=8, offsets="1 2"),
    _g("circulant", n=9, offsets="1 2"), _g("circulant", n=9, offsets="1 3"),
    _g("circulant", n=9, offsets="1 2 3"),
    _g("multiplied", base="complete", n=4, t=2),
    {"family": "union-of-hamilton-cycles", "params": {"n": 6, "h": 2}, "seed": 1},
    {"family": "union-of-hamilton-cycles", "params": {"n": 8, "h": 3}, "seed": 2},
    {"family": "random-regular-multigraph", "params": {"n": 6, "r": 4}, "seed": 3},
]
_BIP = [
    *[_g("dipole", width=w) for w in range(6, 13)],
    *[_g("multiplied", base="circulant", n=4, offsets="1", t=t) for t in (3, 4, 5)],
    *[_g("multiplied", base="complete-bipartite", a=2, b=3, t=t) for t in (3, 4, 5)],
    *[_g("multiplied", base="complete-bipartite", a=3, b=3, t=t) for t in (2, 3, 4)],
    *[_g("multiplied", base="circulant", n=6, offsets="1", t=t) for t in (3, 4, 5)],
]
_GEN = [
    *[_g("dipole", width=w) for w in range(9, 13)],
    _g("multiplied", base="complete", n=4, t=5), _g("multiplied", base="complete", n=4, t=6),
    _g("multiplied", base="complete", n=5, t=5), _g("multiplied", base="complete", n=5, t=3),
    _g("multiplied", base="complete", n=3, t=6), _g("multiplied", base="complete", n=3, t=8),
    _g("multiplied", base="complete", n=6, t=3),
]
_REG = [
    _g("complete", n=4), _g("complete", n=5), _g("complete", n=6), _g("complete", n=7),
    _g("complete", n=8), _g("complete", n=9), _g("petersen"),
    _g("circulant", n=5, offsets="1"), _g("circulant", n=7, offsets="1"), _g("circulant", n=9, offsets="1 2"),
    _g("circulant", n=8, offsets="1 4"), _g("complete-bipartite", a=3, b=3),
    _g("multiplied", base="complete", n=4, t=2), _g("multiplied", base="complete", n=5, t=3),
    {"family": "random-regular-multigraph", "params": {"n": 8, "r": 3}, "seed": 5},
    {"family": "union-of-hamilton-cycles", "params": {"n": 7, "h": 2}, "seed": 6},
]
_TREE4 = [
    _g("complete", n=5), _g("multiplied", base="complete", n=5, t=2), _g("multiplied", base="complete", n=4, t=3),
    _g("multiplied", base="complete", n=6, t=2), _g("complete", n=8), _g("complete", n=9),
    *[_g("dipole", width=w) for w in (4, 6, 8)],
    {"family": "union-of-hamilton-cycles", "params": {"n": 6, "h": 4}, "seed": 7},
]

DEFAULT_CORPORA = {
    "eulerian-bounded": {"graphs": _EB, "settings": [{}]},
    "quarter-degree": {"graphs": _EB, "settings": [{}]},
    "bounded-edge": {
        "graphs": _EB,
        "settings": [
            {"m": 1, "m0": 0}, {"m": 1, "m0": 1}, {"m": 2, "m0": 0},
            {"m": 1, "m0": 1, "z": 0, "target": "all"},
            {"m": 1, "m0": 0, "matching": True},
            {"m": 2, "M0": "lowest", "z": 0},
        ],
    },
    "list-edge": {
        "graphs": _EB,
        "settings": [{"m": 1, "m0": 0, "lists": "random"}, {"m": 1, "m0": 1, "lists": "random"},
                     {"m": 1, "lists": "random", "M0": "lowest", "z": 0}],
    },
    "mod2-main": {
        "graphs": _EB,
        "settings": [{"m": 1, "m0": 0, "f": "random"}, {"m": 1, "m0": 1, "f": "random"},
                     {"m": 0, "m0": 1, "f": "random"}, {"m": 2, "m0": 0, "f": "random"},
                     {"m": 1, "m0": 1, "f": "r-1"}],
    },
    "bip-modk-edge": {
        "graphs": _BIP,
        "settings": [{"m": 1, "m0": 0, "k": 2, "f": "random"}, {"m": 1, "m0": 1, "k": 2, "f": "random"},
                     {"m": 1, "m0": 0, "k": 3, "f": "random"}],
    },
    "bip-modk": {
        "graphs": _BIP,
        "settings": [{"m": 1, "k": 2, "f": "random"}, {"m": 2, "k": 2, "f": "random"},
                     {"m": 1, "k": 2, "f": "half"}, {"m": 1, "k": 3, "f": "half"}],
    },
    "gen-modk": {
        "graphs": _GEN,
        "settings": [{"m": 1, "m0": 0, "k": 2, "f": "random"}, {"m": 1, "m0": 1, "k": 2, "f": "random"},
                     {"m": 1, "m0": 0, "k": 3, "f": "random"}, {"m": 1, "m0": 0, "ab": "middle"}],
    },
    "decomp-bi-index": {
        "graphs": _GEN + _TREE4,
        "settings": [{"m1": 1, "m2": 1, "k0": 1}, {"m1": 1, "m2": 2, "k0": 2},
                     {"m1": 1, "m2": 1, "k0": 1, "parity_side": 1},
                     {"m1": 1, "m2": 1, "k0": 1, "parity_side": 2, "equality": False}],
    },
    "mod-regular": {
        "graphs": _GEN + _TREE4,
        "settings": [{"k": 2, "m": 1, "m0": 0}, {"k": 2, "m": 1, "m0": 1}, {"k": 3, "m": 1, "m0": 0},
                     {"k": 2, "m": 1, "m0": 1, "bipartite_required": True}, {"k": 2, "m": 1, "m0": 0, "z": 0}],
    },
    "bip-eulerian": {"graphs": _TREE4, "settings": [{}]},
    "nonbip-eulerian-k": {"graphs": _GEN + _TREE4 + _EB, "settings": [{"k": 1}, {"k": 2}]},
    "bi-index-regular": {"graphs": _REG, "settings": [{}]},
    "gf-oracle-equivalence": {"instances": 240, "loops": True},
}

# audits that check solvers rather than a pipeline
EXTRA_AUDITS = {
    "gf-oracle-equivalence": "exact gf / list / modulo solvers agree with brute force on |E| <= 16",
}


def _rng(seed, *key):
    return np.random.default_rng([int(seed), *[int(x) for x in key]])


def _key_ints(text):
    return [ord(c) for c in text][:32]


def _compatible_residues(G, k, rng, tries=64):
    """A random residue map compatible with ``G`` (first vertex adjusted when needed)."""
    for _ in range(tries):
        res = [int(x) for x in rng.integers(0, k, G.n)]
        for fix in range(k):
            R = ResidueTarget(k, tuple([(res[0] + fix) % k] + res[1:]))
            if compatible(G, R):
                return R
    return ResidueTarget.constant(G.n, k, 0)


def _residues(G, setting, rng):
    k = int(setting.get("k", 2))
    spec = setting.get("f", "zero")
    d = G.degrees
    if spec == "random":
        return _compatible_residues(G, k, rng)
    if spec == "zero":
        return ResidueTarget.constant(G.n, k, 0)
    if spec == "r-1":
        return ResidueTarget(k, tuple((x // 2 - 1) % k for x in d))
    if spec == "half":
        return ResidueTarget(k, tuple((x // 2) % k for x in d))
    return ResidueTarget(k, tuple(int(x) % k for x in spec))


def _random_lists(G, m, cut, rng):
    """Random lists of size ``ceil(d/2)+1`` inside ``[m, d(v) - cut(v)]``."""
    lists = []
    for v in range(G.n):
        pool = list(range(m, G.degree(v) - cut[v] + 1))
        size = min(len(pool), (G.degree(v) + 1) // 2 + 1)
        pick = rng.choice(len(pool), size=size, replace=False) if pool else []
        lists.append(frozenset(pool[i] for i in sorted(int(x) for x in pick)))
    return lists


def _matching(G):
    used, M = set(), []
    for e, (u, v) in enumerate(G.edges):
        if u != v and u not in used and v not in used:
            M.append(e)
            used |= {u, v}
    return M


def _lowest_M0(G, m, z):
    """Up to ``m`` lowest-id non-loop edges at ``z``."""
    return [e for e in G.incidence[z] if not G.is_loop(e)][:m]


def run_theorem(theorem, G: Multigraph, setting, rng=None, strict=True):
    """Dispatch one pipeline call from a settings dict (used by audits and the CLI)."""
    rng = rng if rng is not None else np.random.default_rng(0)
    s = dict(setting)
    m, m0, z, target = int(s.get("m", 1)), int(s.get("m0", 0)), s.get("z"), s.get("target")
    if theorem == "eulerian-bounded":
        return P.eulerian_bounded_pipeline(G, z, target, strict=strict)
    if theorem == "quarter-degree":
        return P.quarter_degree_pipeline(G, strict=strict)
    if theorem == "bounded-edge":
        M = _matching(G) if s.get("matching") else s.get("M", ())
        M0 = s.get("M0", ())
        if M0 == "lowest":
            M0 = _lowest_M0(G, m, z if z is not None else 0)
        return P.bounded_pipeline(G, m, m0, z, target, M, M0, s.get("l0"), s.get("s"), strict=strict)
    if theorem == "list-edge":
        L = s.get("lists")
        M0 = s.get("M0")
        if M0 == "lowest":
            e = _lowest_M0(G, 1, z)[:m]
            M0 = {x: G.edges[x][1] if G.edges[x][0] == z else G.edges[x][0] for x in e}
        elif M0 is not None:
            M0 = {int(k): int(v) for k, v in dict(M0).items()}
        if L == "random":
            cut = [m0] * G.n if M0 is None else G.degrees_in(M0)
            L = _random_lists(G, m, cut, rng)
        return P.list_pipeline(G, L, m, m0, s.get("l0"), z, s.get("M", ()), M0, s.get("r"), strict=strict)
    if theorem == "mod2-main":
        return P.mod2_pipeline(G, _residues(G, {**s, "k": 2}, rng), m, m0, z, target, strict=strict)
    if theorem in ("bip-modk-edge", "bip-modk"):
        res = P.bip_modk_pipeline(G, _residues(G, s, rng), m, m0, z, target, strict=strict, theorem=theorem)
        return res
    if theorem == "gen-modk":
        if "ab" in s:
            a, b = s["ab"] if s["ab"] != "middle" else _middle_ab(G, m, m0)
            return P.ab_factor_pipeline(G, a, b, m, m0, strict=strict)
        return P.gen_modk_pipeline(G, _residues(G, s, rng), m, m0, strict=strict)
    if theorem == "mod-regular":
        k = int(s.get("k", 2))
        R = _residues(G, {**s, "k": k}, rng)
        return P.modregular_pipeline(G, k, m, m0, R, bool(s.get("bipartite_required")), z, strict=strict)
    if theorem == "bip-eulerian":
        return P.bip_eulerian_pipeline(G, strict=strict)
    if theorem == "nonbip-eulerian-k":
        return P.nonbip_eulerian_pipeline(G, int(s.get("k", 1)))
    if theorem == "decomp-bi-index":
        return P.bi_index_split_pipeline(
            G, int(s.get("m1", 1)), int(s.get("m2", 1)), int(s.get("k0", 1)),
            s.get("parity_side"), bool(s.get("equality", True)),
        )
    raise InvalidInput(f"unknown theorem id {theorem!r}")


def _middle_ab(G, m, m0):
    """``a = r/2 - m0``, ``b = a + 2`` style pair for r-regular graphs (``a + m0 <= r/2 <= b - m``)."""
    r = G.degrees[0]
    if any(x != r for x in G.degrees):
        raise PreconditionUnmet("the {a,b} setting needs a regular graph")
    a = r // 2 - m0
    b = max(a + 1, (r + 1) // 2 + m)
    if a <= 0:
        raise PreconditionUnmet("degree too small for a positive a")
    if (a * b * G.n) % 2:
        raise PreconditionUnmet("a*b*|V| is odd")
    return a, b


def _expand(settings, G):
    out = []
    for s in settings:
        if s.get("target") == "all":
            z = int(s.get("z", 0))
            m, m0 = int(s.get("m", 1)), int(s.get("m0", 0))
            d = G.degree(z)
            for t in range(d // 2 - m0, (d + 1) // 2 + m + 1):
                out.append({**s, "z": z, "target": t})
        else:
            out.append(s)
    return out


def _key(entry, setting):
    return json.dumps({"graph": entry, "setting": setting}, sort_keys=True, separators=(",", ":"))


def _bi_regular_row(G):
    d = G.degrees
    row = {"r": d[0] if d else 0, "regular": len(set(d)) <= 1}
    bi = bipartite_index(G)
    brute = brute_force_bipartite_index(G)
    row.update(bi=bi, bi_brute=brute, bipartite=two_coloring(G) is not None)
    notes = []
    outcome = "checked"
    if bi != brute:
        outcome = "finding"
        notes.append(f"bipartite index {bi} disagrees with brute force {brute}")
    if row["regular"] and not row["bipartite"]:
        r = row["r"]
        row["half_bound"] = bi * 2 >= r
        if not row["half_bound"]:
            outcome = "finding"
            notes.append(f"bi={bi} < r/2={r / 2}")
        if r % 2:
            row["odd_bound"] = bi >= r
            if bi < r and outcome == "checked":
                outcome = "recorded"
                notes.append(f"odd r: bi={bi} < r={r}")
    row["outcome"] = outcome
    if notes:
        row["notes"] = notes
    return row


def _run_row(theorem, G, entry, setting, rng, oracle):
    row = {"setting": setting}
    try:
        res = run_theorem(theorem, G, setting, rng)
    except PreconditionUnmet as exc:
        row.update(outcome="precondition-unmet", reason=str(exc))
        return row
    except ContractViolation as exc:
        row.update(outcome="finding", reason=str(exc), graph=G.to_dict())
        wit = exc.witness
        if isinstance(wit, P.PipelineResult):
            row["witness"] = wit.to_dict()
        elif isinstance(wit, FactorContract):
            row["witness"] = {"contract": wit.to_dict()}
        else:
            row["witness"] = repr(wit)
        row["reproduce"] = (
            f"ff gen --family {entry['family']} --params {_param_text(entry)} --seed {entry.get('seed', 0)} --out g.json"
            f" && ff solve --graph g.json --contract c.json --method pipeline:{theorem}"
        )
        return row
    except CapacityError as exc:
        row.update(outcome="capacity", reason=str(exc))
        return row
    # verdict recomputed here, never copied from the pipeline
    if res.factors:
        verdict_ok = res.verdict.ok
    else:
        verdict_ok = verify(G, res.H, res.contract).ok
    row.update(
        outcome="constructed" if verdict_ok else "finding",
        route=res.route,
        hypotheses=dict(sorted(res.hypotheses.items())),
        H=sorted(res.H),
        lo=list(res.lo),
        hi=list(res.hi),
        verified=verdict_ok,
        contract=res.contract.to_dict(),
    )
    if res.factors:
        row["factors"] = [sorted(F) for F in res.factors]
    if res.notes:
        row["notes"] = list(res.notes)
    if oracle and G.m <= ORACLE_EDGE_CAP and not res.factors:
        row["oracle_exists"] = brute_force_search(G, res.contract) is not None
        if not row["oracle_exists"]:
            row["outcome"] = "finding"
            row["reason"] = "oracle finds no factor meeting the contract the pipeline satisfied"
    return row


def _equivalence_rows(corpus, seed):
    rows = []
    for i in range(int(corpus.get("instances", 240))):
        G, kind, C, source = instance(seed, i, loops=bool(corpus.get("loops", True)))
        row = compare(G, kind, C)
        row["outcome"] = "checked" if row["agree"] else "finding"
        if not row["agree"]:
            row["graph"] = G.to_dict()
            row["contract"] = C.to_dict()
        row.update(key=f"{i:06d}", source=source, n=G.n, m=G.m)
        rows.append(row)
    return rows


def _param_text(entry):
    return ",".join(f"{k}={v}" for k, v in sorted(entry.get("params", {}).items()))


@dataclass
class AuditReport:
    theorem: str
    corpus: dict
    seed: int
    rows: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def summary(self):
        counts = {}
        for r in self.rows:
            counts[r["outcome"]] = counts.get(r["outcome"], 0) + 1
        return dict(sorted(counts.items()))

    @property
    def findings(self):
        return [r for r in self.rows if r["outcome"] == "finding"]

    def to_dict(self, timing=True):
        out = {
            "format": REPORT_FORMAT,
            "theorem": self.theorem,
            "corpus": self.corpus,
            "seed": self.seed,
            "rows": self.rows,
            "summary": self.summary,
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def to_json(self, timing=True):
        return json.dumps(self.to_dict(timing), sort_keys=True, separators=(",", ":"))


def audit(theorem: str, corpus=None, seed=0, oracle=True) -> AuditReport:
    """Run ``theorem`` over ``corpus`` (default corpus when None)."""
    if theorem not in P.THEOREMS and theorem not in EXTRA_AUDITS:
        raise InvalidInput(f"unknown theorem id {theorem!r}")
    corpus = DEFAULT_CORPORA[theorem] if corpus is None else corpus
    start = time.perf_counter()
    if theorem == "gf-oracle-equivalence":
        rows = _equivalence_rows(corpus, seed)
        return AuditReport(theorem, corpus, int(seed), rows, time.perf_counter() - start)
    rows = []
    for gi, entry in enumerate(corpus["graphs"]):
        try:
            G = generate(entry["family"], entry.get("params", {}), entry.get("seed", 0))
        except FactorError as exc:
            rows.append({"key": _key(entry, {}), "graph_entry": entry, "outcome": "invalid", "reason": str(exc)})
            continue
        settings = corpus.get("settings", [{}])
        for si, setting in enumerate(_expand(settings, G)):
            key = _key(entry, setting)
            if theorem == "bi-index-regular":
                row = _bi_regular_row(G)
            else:
                row = _run_row(theorem, G, entry, setting, _rng(seed, gi, si, *_key_ints(key)), oracle)
            row["key"] = key
            row["graph_entry"] = entry
            row["n"], row["m"] = G.n, G.m
            rows.append(row)
    rows.sort(key=lambda r: r["key"])
    return AuditReport(theorem, corpus, int(seed), rows, time.perf_counter() - start)


def edge_connectivity_of(entry):
    """Convenience for corpus inspection."""
    G = generate(entry["family"], entry.get("params", {}), entry.get("seed", 0))
    return edge_connectivity(G)
