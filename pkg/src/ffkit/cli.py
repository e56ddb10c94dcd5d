"""``ff`` command line: gen, stats, solve, audit, verify.

Exit codes: 0 ok, 2 precondition unmet, 3 finding (or failed verification),
4 invalid input, 5 capacity exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import FactorError, InvalidInput, PreconditionUnmet
from .graph import Multigraph, Orientation, factor_from_dict, factor_to_dict

FINDING = 3


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path} is not valid JSON: {exc}") from exc


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text + "\n")
    else:
        Path(path).write_text(text + "\n")


def _graph(path) -> Multigraph:
    return Multigraph.from_dict(_read_json(path))


def _contract(path, G):
    from .contract import FactorContract

    if path is None:
        return FactorContract()
    return FactorContract.from_dict(_read_json(path), n=G.n).check(G)


def cmd_gen(args):
    from .harness.generators import generate, parse_params

    params = parse_params(args.params)
    if args.n is not None:
        params["n"] = args.n
    G = generate(args.family, params, args.seed)
    _write(args.out, G.to_json())
    return 0


def cmd_stats(args):
    from .compat import BIPARTITION_CAP, bipartite_index
    from .connectivity import edge_connectivity, max_packing
    from .graph import two_coloring

    G = _graph(args.graph)
    d = G.degrees
    out = {
        "n": G.n,
        "m": G.m,
        "loops": len(G.loops()),
        "degrees": list(d),
        "min_degree": min(d, default=0),
        "max_degree": max(d, default=0),
        "connected": G.is_connected(),
        "edge_connectivity": edge_connectivity(G),
        "max_packing": max_packing(G) if G.n > 1 else None,
        "bipartite": two_coloring(G) is not None,
    }
    if G.n <= BIPARTITION_CAP:
        out["bipartite_index"] = bipartite_index(G)
    _write(None, json.dumps(out, sort_keys=True))
    return 0


def _pipeline_setting(C, args):
    # without a contract the pipelines default to m = 1
    setting = {"m": C.m if args.contract else 1, "m0": C.m0}
    if args.m is not None:
        setting["m"] = args.m
    if args.m0 is not None:
        setting["m0"] = args.m0
    if C.include:
        setting["M"] = sorted(C.include)
    if C.exclude:
        setting["M0"] = sorted(C.exclude)
    if C.lists is not None:
        setting["lists"] = [sorted(L) if L is not None else [] for L in C.lists]
    if C.mod is not None:
        setting["k"] = C.mod.k
        setting["f"] = list(C.mod.res)
    if args.k is not None:
        setting["k"] = args.k
    if args.z is not None:
        setting["z"] = args.z
    if args.target is not None:
        setting["target"] = args.target
    if args.ab:
        setting["ab"] = [int(x) for x in args.ab.split(",")]
    if C.bipartite:
        setting["bipartite_required"] = True
    return setting


def cmd_solve(args):
    G = _graph(args.graph)
    C = _contract(args.contract, G)
    method = args.method
    report = {"method": method}
    if method == "exact":
        from .solvers import solve_contract

        H = solve_contract(G, C, limit=args.limit)
        if H is None:
            _write(args.report, json.dumps({**report, "exists": False}, sort_keys=True))
            print("no factor meets the contract", file=sys.stderr)
            return 2
    elif method == "tour":
        from .harness.verify import verify
        from .tour import tour_bounds, tour_factor

        O = Orientation.from_dict(G, _read_json(args.orientation)) if args.orientation else Orientation(G)
        out, ind = O.out_degrees(), O.in_degrees()
        s = [max(0, o - i) for o, i in zip(out, ind)]
        H = tour_factor(G, O, C.include, C.exclude, s, 0)
        lo, hi = tour_bounds(G, O, C.include, C.exclude, s, [0] * G.n)
        report.update(lo=lo, hi=hi)
        verdict = verify(G, H, C)
        if not verdict:
            _write(args.out, json.dumps(factor_to_dict(H), sort_keys=True))
            print(f"tour factor does not meet the contract: {list(verdict.failures)}", file=sys.stderr)
            return 2
    elif method.startswith("pipeline:"):
        from .harness.audit import run_theorem

        theorem = method.split(":", 1)[1]
        setting = _pipeline_setting(C, args)
        if theorem == "list-edge" and "M0" in setting:
            setting["M0"] = {e: G.edges[e][1] for e in setting["M0"]}
        res = run_theorem(theorem, G, setting, strict=not args.no_strict)
        H = res.H
        report.update(res.to_dict())
    else:
        raise InvalidInput(f"unknown method {method!r} (exact, tour or pipeline:<id>)")
    _write(args.out, json.dumps(factor_to_dict(H), sort_keys=True))
    if args.report:
        _write(args.report, json.dumps(report, sort_keys=True))
    return 0


def cmd_audit(args):
    from .harness.audit import audit

    corpus = None if args.corpus in (None, "default") else _read_json(args.corpus)
    report = audit(args.theorem, corpus, args.seed, oracle=not args.no_oracle)
    _write(args.out, report.to_json(timing=not args.no_timing))
    print(f"{args.theorem}: {report.summary} in {report.wall_time:.2f}s", file=sys.stderr)
    return FINDING if report.findings else 0


def cmd_verify(args):
    from .harness.verify import verify

    G = _graph(args.graph)
    C = _contract(args.contract, G)
    H = factor_from_dict(_read_json(args.factor))
    verdict = verify(G, H, C)
    _write(None, json.dumps(verdict.to_dict(), sort_keys=True))
    return 0 if verdict else FINDING


def build_parser():
    p = argparse.ArgumentParser(prog="ff", description="Factor construction and theorem audits for multigraphs.")
    sub = p.add_subparsers(dest="verb", required=True)

    g = sub.add_parser("gen", help="generate a graph")
    g.add_argument("--family", required=True)
    g.add_argument("--n", type=int)
    g.add_argument("--params", default="")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default="-")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("stats", help="degree, connectivity and packing summary")
    s.add_argument("graph")
    s.set_defaults(func=cmd_stats)

    v = sub.add_parser("solve", help="find a factor")
    v.add_argument("--graph", required=True)
    v.add_argument("--contract")
    v.add_argument("--method", default="exact", help="exact | tour | pipeline:<theorem id>")
    v.add_argument("--out", default="-")
    v.add_argument("--report", help="write method details (window, hypotheses, route) here")
    v.add_argument("--limit", type=int, default=None, help="cap on degree-feasible factors examined")
    v.add_argument("--orientation", help="orientation JSON for the tour method")
    v.add_argument("--m", type=int, help="tree-connectivity demand on the factor (pipelines)")
    v.add_argument("--m0", type=int, help="tree-connectivity demand on the complement (pipelines)")
    v.add_argument("--k", type=int)
    v.add_argument("--z", type=int)
    v.add_argument("--target", type=int)
    v.add_argument("--ab", help="a,b for the {a,b}-factor setting of gen-modk")
    v.add_argument("--no-strict", action="store_true", help="fall back to exact search when a hypothesis fails")
    v.set_defaults(func=cmd_solve)

    a = sub.add_parser("audit", help="run a theorem audit")
    a.add_argument("--theorem", required=True)
    a.add_argument("--corpus", default="default")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--out", default="-")
    a.add_argument("--no-oracle", action="store_true")
    a.add_argument("--no-timing", action="store_true", help="omit wall_time for byte comparison")
    a.set_defaults(func=cmd_audit)

    c = sub.add_parser("verify", help="check a factor against a contract")
    c.add_argument("--graph", required=True)
    c.add_argument("--factor", required=True)
    c.add_argument("--contract")
    c.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FactorError as exc:
        kind = "precondition unmet" if isinstance(exc, PreconditionUnmet) else type(exc).__name__
        print(f"ff: {kind}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
