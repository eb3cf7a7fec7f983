"""Command-line interface.

Exit status: 0 success, 1 a semantic check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import gf2
from .algebraic import build_algebraic
from .bcjr import build_dual, build_tbbcjr, state_matrices
from .code import CodeSpec
from .emsgm import activity_report, activity_table, build_emsgm
from .errors import TrellisError
from .fixtures import NAMES, load_fixture
from .kv import build_kv, build_kv_algebraic
from .metrics import (check_alpha_beta_duality, check_dual_vertex_equality, check_edge_dimension_duality,
                      compare_profile, complexity_profile, generator_profile)
from .suite import run_suite
from .textio import read_matrix, read_spans, read_spec
from .trellis import export_dot, identical, isomorphic, profile, to_dict

METHODS = ("tbbcjr", "algebraic", "kv", "kv-algebraic", "emsgm", "dual")
EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _load(args, suffix: str = ""):
    """Return ``(spec, dual_spec)`` from --fixture or from --g/--h/--spans."""
    fixture = getattr(args, "fixture" + suffix)
    paths = [getattr(args, a + suffix) for a in ("g", "h", "spans")]
    if fixture and any(paths):
        raise InputError("give either a fixture or matrix files, not both")
    if fixture:
        f = load_fixture(fixture)
        spec, dual = f.spec, f.dual
    elif all(paths):
        spec = read_spec(*paths)
        dual = None
    else:
        raise InputError("need --fixture or all of --g, --h, --spans" + (f" (with suffix {suffix})" if suffix else ""))
    if not suffix and (args.dual_h or args.dual_spans):
        if not (args.dual_h and args.dual_spans):
            raise InputError("--dual-h and --dual-spans go together")
        Hd = read_matrix(args.dual_h, cols=spec.n)
        dual = CodeSpec(Hd, spec.G, read_spans(args.dual_spans, spec.n))
    spec.require_valid()
    return spec, dual


def build(spec: CodeSpec, method: str, limit: int):
    if method in ("dual",):
        if spec.n - spec.k > limit:
            raise InputError(f"n-k = {spec.n - spec.k} exceeds --limit-k {limit}")
    elif spec.k > limit:
        raise InputError(f"k = {spec.k} exceeds --limit-k {limit}")
    if method == "tbbcjr":
        return build_tbbcjr(spec, limit)
    if method == "algebraic":
        return build_algebraic(spec, limit=limit)
    if method == "kv":
        return build_kv(spec, limit)
    if method == "kv-algebraic":
        return build_kv_algebraic(spec, limit=limit)
    if method == "emsgm":
        return build_emsgm(spec)
    if method == "dual":
        return build_dual(spec, limit)
    raise InputError(f"unknown method {method!r}")


def _summary(T) -> dict:
    p = profile(T)
    return {"depth": T.depth, "vertex_profile": list(p.vertex_counts), "edge_profile": list(p.edge_counts),
            "vertices": T.vertex_count, "edges": T.edge_count}


def cmd_build(args, out) -> int:
    spec, _ = _load(args)
    T = build(spec, args.method, args.limit_k)
    if args.format == "dot":
        out.write(export_dot(T))
    elif args.format == "summary":
        s = _summary(T)
        out.write(f"method {args.method}\n")
        out.write(f"vertex_profile {' '.join(map(str, s['vertex_profile']))}\n")
        out.write(f"edge_profile {' '.join(map(str, s['edge_profile']))}\n")
    else:
        out.write(_dump({"method": args.method, "summary": _summary(T), "trellis": to_dict(T)}))
    return EXIT_OK


def cmd_compare(args, out) -> int:
    if len(args.method) != 2:
        raise InputError("compare needs exactly two --method flags")
    spec_a, _ = _load(args)
    has_second = args.fixture2 or args.g2 or args.h2 or args.spans2
    spec_b = _load(args, "2")[0] if has_second else spec_a
    Ta = build(spec_a, args.method[0], args.limit_k)
    Tb = build(spec_b, args.method[1], args.limit_k)
    if identical(Ta, Tb):
        verdict = "identical"
        out.write("identical\n")
    else:
        iso = isomorphic(Ta, Tb)
        if iso.isomorphic:
            verdict = "isomorphic"
            out.write(f"isomorphic (witness size {iso.witness_size})\n")
        else:
            verdict = "distinct"
            out.write(f"distinct (first difference at level {iso.failed_level}; {iso.reason})\n")
    if args.expect is None:
        return EXIT_OK
    satisfied = verdict == "identical" or (verdict == "isomorphic" and args.expect == "isomorphic")
    return EXIT_OK if satisfied else EXIT_CHECK


def cmd_metrics(args, out) -> int:
    spec, dual = _load(args)
    chain = state_matrices(spec)
    ok = True
    report = {}
    text = []
    for method in ("tbbcjr", "algebraic"):
        rep = compare_profile(complexity_profile(spec, chain), build(spec, method, args.limit_k))
        ok &= rep.ok
        report[method] = [{"level": c.level, "quantity": c.quantity, "predicted": c.predicted,
                           "counted": c.counted, "ok": c.ok} for c in rep.checks]
        text.append(f"# {method}\n{rep.format()}")
    if spec.n - spec.k <= args.limit_k:
        rep = compare_profile(generator_profile(spec.H, chain.transpose()), build_dual(spec, args.limit_k))
        ok &= rep.ok
        text.append(f"# dual\n{rep.format()}")
    dv = check_dual_vertex_equality(spec, chain)
    ed = check_edge_dimension_duality(spec, dual, chain)
    ok &= dv.ok and ed.ok
    text.append(f"# dual vertex counts\n{dv.format()}")
    text.append(f"# edge dimension duality\n{ed.format()}")
    report["dual_vertex_equality"] = dv.ok
    report["edge_dimension_duality"] = [{"level": l.level, "edge_dim": l.lhs, "dual_side": l.rhs, "ok": l.ok}
                                        for l in ed.lines]
    if dual is not None:
        dual.require_valid()
        pt, dt = activity_table(spec.spans, spec.n), activity_table(dual.spans, spec.n)
        a, b = check_alpha_beta_duality(pt, dt)
        ok &= a.ok and b.ok
        text.append(f"# activity (primal)\n{activity_report(pt)}")
        text.append(f"# activity (dual)\n{activity_report(dt)}")
        text.append(f"# alpha/beta duality\n{a.format()}{b.format()}")
        report["alpha_beta_duality"] = a.ok and b.ok
    report["ok"] = ok
    out.write(_dump(report) if args.format == "json" else "\n".join(text))
    return EXIT_OK if ok else EXIT_CHECK


def cmd_proptest(args, out) -> int:
    if args.count < 0:
        raise InputError("--count must be non-negative")
    res = run_suite(args.seed, args.count, inject_fault=args.inject_fault)
    out.write(f"seed {res.seed}: {res.passed}/{res.count} passed\n")
    print(f"elapsed {res.seconds:.2f}s", file=sys.stderr)
    if res.failures:
        out.write(_dump({"counterexamples": res.counterexamples()}))
        return EXIT_CHECK
    return EXIT_OK


def _add_inputs(p, suffix: str = ""):
    p.add_argument(f"--fixture{suffix}", choices=NAMES)
    p.add_argument(f"--g{suffix}", metavar="PATH")
    p.add_argument(f"--h{suffix}", metavar="PATH")
    p.add_argument(f"--spans{suffix}", metavar="PATH")


def parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tbtrellis", description="Tail-biting trellis constructions and checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        _add_inputs(p)
        p.add_argument("--dual-h", metavar="PATH")
        p.add_argument("--dual-spans", metavar="PATH")
        p.add_argument("--limit-k", type=int, default=gf2.DEFAULT_LIMIT)

    p = sub.add_parser("build", help="build one trellis")
    common(p)
    p.add_argument("--method", choices=METHODS, required=True)
    p.add_argument("--format", choices=("json", "dot", "summary"), default="json")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("compare", help="compare two constructions")
    common(p)
    _add_inputs(p, "2")
    p.add_argument("--method", choices=METHODS, action="append", required=True)
    p.add_argument("--expect", choices=("identical", "isomorphic"))
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("metrics", help="predicted against counted complexity")
    common(p)
    p.add_argument("--format", choices=("json", "summary"), default="summary")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("proptest", help="random property run")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_proptest)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if getattr(args, "limit_k", 1) < 1:
        print("error: --limit-k must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args, out)
    except (InputError, TrellisError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
