"""Command-line entry point: gen, census, kappa, idp, trees3, verify, oracle, sweep.

Exit codes: 0 pass, 1 verification failure, 2 budget exceeded, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from collections import Counter
from itertools import combinations
from math import comb

from . import flow, graph, perm
from .graph import BudgetExceeded
from .idp import check_disjoint, check_exits, idp_paths
from .trees import trees3
from .verify import check_trees, kappa3_oracle

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(obj, out) -> None:
    out.write(json.dumps(obj) + "\n")


def _graph(args):
    try:
        perm.check_params(args.n, args.k)
    except perm.ArrangementError as exc:
        raise UsageError(str(exc)) from None
    return graph.build(args.n, args.k)


def _vertices(g, labels, count=None):
    if count is not None and len(labels) != count:
        raise UsageError(f"expected {count} arrangement labels, got {len(labels)}")
    try:
        vs = [g.vertex(x) for x in labels]
    except perm.ArrangementError as exc:
        raise UsageError(str(exc)) from None
    if len(set(vs)) != len(vs):
        raise UsageError("labels must be distinct")
    return vs


def _minus_copy(g, i):
    if not 1 <= i <= g.n:
        raise UsageError(f"--minus-copy must be in [1, {g.n}]")
    return g.complement_view(i)


def cmd_gen(args, out) -> int:
    g = _graph(args)
    target = g if args.minus_copy is None else _minus_copy(g, args.minus_copy)
    out.write(graph.export(target, args.format).decode())
    return EXIT_OK


def cmd_census(args, out) -> int:
    report = graph.census(_graph(args))
    if args.format == "text":
        for key, val in report.items():
            out.write(f"{key:>10}  {val}\n")
    else:
        _emit(report, out)
    return EXIT_OK if report["pass"] else EXIT_FAIL


def cmd_kappa(args, out) -> int:
    g = _graph(args)
    if args.minus_copy is None:
        target, expected = g, g.n - 1
    else:
        target, expected = _minus_copy(g, args.minus_copy), g.n - 2
    computed = flow.vertex_connectivity(target)
    ok = computed == expected
    _emit({"n": g.n, "k": g.k, "minusCopy": args.minus_copy,
           "expected": expected, "computed": computed, "pass": ok}, out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_idp(args, out) -> int:
    g = _graph(args)
    if g.k < 3:
        raise UsageError("idp needs k >= 3")
    (v,) = _vertices(g, [args.base], 1)
    r = idp_paths(g.n, g.k, g.labels[v])
    ok = check_disjoint(r).passed and check_exits(r).passed
    fmt = lambda a: perm.format_arrangement(a, g.n)  # noqa: E731
    if args.format == "text":
        width = max(len(p) for p in r.paths.values())
        for i, p in sorted(r.paths.items()):
            cells = [fmt(a) for a in p.vertices] + [""] * (width - len(p))
            out.write(f"P{i:<3} " + " ".join(f"{c:>{len(fmt(r.base))}}" for c in cells))
            out.write(f"  -> {fmt(p.exit_vertex)} (copy {p.exit_copy})\n")
    else:
        _emit({
            "n": g.n, "k": g.k, "base": fmt(r.base),
            "paths": {str(i): [fmt(a) for a in p.vertices] for i, p in sorted(r.paths.items())},
            "exits": {str(c): i for c, i in sorted(r.exits.items())},
            "verified": ok,
        }, out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_trees3(args, out) -> int:
    g = _graph(args)
    S = _vertices(g, args.S, 3)
    ts = trees3(g, S)
    report = check_trees(g, ts.S, ts.trees)
    ok = report.passed and len(ts) == g.n - 2
    doc = {"n": g.n, "k": g.k}
    doc.update(ts.to_dict(g))
    doc["verified"] = ok
    _emit(doc, out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args, out) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            doc = json.load(fh)
        n, k = int(doc["n"]), int(doc["k"])
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read tree-set file: {exc}") from None
    args.n, args.k = n, k
    g = _graph(args)

    def vid(x):
        return x if isinstance(x, int) else g.vertex(str(x))

    try:
        S = [vid(x) for x in doc["S"]]
        trees = [[(vid(a), vid(b)) for a, b in t] for t in doc["trees"]]
    except (KeyError, TypeError, ValueError, perm.ArrangementError) as exc:
        raise UsageError(f"malformed tree-set file: {exc}") from None
    report = check_trees(g, S, trees).to_dict()
    report["trees"] = len(trees)
    _emit(report, out)
    return EXIT_OK if report["pass"] else EXIT_FAIL


def cmd_oracle(args, out) -> int:
    g = _graph(args)
    S = _vertices(g, args.S, 3)
    if args.r_cap < 1:
        raise UsageError("--r-cap must be positive")
    res = kappa3_oracle(g, S, r_cap=args.r_cap)
    expected = g.n - 2
    doc = res.to_dict(g)
    doc.update({"n": g.n, "k": g.k, "expected": expected, "agree": res.value == expected})
    _emit(doc, out)
    return EXIT_OK if res.value == expected else EXIT_FAIL


def sample_triples(num_vertices: int, m: int, seed: int) -> list[tuple[int, int, int]]:
    """m distinct sorted vertex triples drawn with MT19937 (random.Random)."""
    m = min(m, comb(num_vertices, 3))
    rng = random.Random(seed)
    seen: set[tuple[int, int, int]] = set()
    out = []
    while len(out) < m:
        t = tuple(sorted(rng.sample(range(num_vertices), 3)))
        if t not in seen:
            seen.add(t)
            out.append(t)
    return out


def run_sweep(g, triples) -> dict:
    by_case: Counter = Counter()
    verified = fallbacks = 0
    min_trees = None
    count = 0
    for S in triples:
        count += 1
        ts = trees3(g, S)
        ok = check_trees(g, ts.S, ts.trees).passed
        got = len(ts) if ok else 0
        verified += ok and got >= g.n - 2
        fallbacks += ts.fallback
        by_case[ts.case] += 1
        min_trees = got if min_trees is None else min(min_trees, got)
    return {
        "n": g.n,
        "k": g.k,
        "triples": count,
        "verified": verified,
        "byCaseTag": dict(sorted(by_case.items())),
        "fallbackCount": fallbacks,
        "minTrees": min_trees,
    }


def cmd_sweep(args, out) -> int:
    g = _graph(args)
    if args.exhaustive:
        triples = combinations(g.vertices, 3)
        mode = {"mode": "exhaustive"}
    else:
        if args.sample < 1:
            raise UsageError("--sample must be positive")
        triples = sample_triples(len(g.vertices), args.sample, args.seed)
        mode = {"mode": "sample", "sample": args.sample, "seed": args.seed}
    summary = run_sweep(g, triples)
    summary.update(mode)
    _emit(summary, out)
    ok = summary["verified"] == summary["triples"] and summary["minTrees"] == g.n - 2
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bsgraph", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def nk(sp):
        sp.add_argument("-n", type=int, required=True)
        sp.add_argument("-k", type=int, required=True)

    sp = sub.add_parser("gen", help="export B_{n,k}")
    nk(sp)
    sp.add_argument("--format", choices=graph.FORMATS, default="edge-list")
    sp.add_argument("--minus-copy", type=int, default=None)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("census", help="vertex/edge/copy counts vs closed forms")
    nk(sp)
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("kappa", help="flow-computed vertex connectivity")
    nk(sp)
    sp.add_argument("--minus-copy", type=int, default=None)
    sp.set_defaults(func=cmd_kappa)

    sp = sub.add_parser("idp", help="n-1 disjoint exit paths from a base vertex")
    nk(sp)
    sp.add_argument("base")
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.set_defaults(func=cmd_idp)

    sp = sub.add_parser("trees3", help="n-2 internally disjoint trees for three vertices")
    nk(sp)
    sp.add_argument("S", nargs="+")
    sp.set_defaults(func=cmd_trees3)

    sp = sub.add_parser("verify", help="check a JSON tree-set file")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("oracle", help="exact number of disjoint trees by search")
    nk(sp)
    sp.add_argument("S", nargs="+")
    sp.add_argument("--r-cap", type=int, default=4)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("sweep", help="run trees3 over many triples")
    nk(sp)
    mode = sp.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--sample", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_sweep)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"bsgraph {args.command}: {exc}\n")
        return EXIT_USAGE
    except BudgetExceeded as exc:
        sys.stderr.write(f"bsgraph {args.command}: budget exceeded: {exc}\n")
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
