"""Command-line front end: gen, reduce, solve, verify, lemmas.

Exit status: 0 success, 1 verification failure, 2 usage or input error,
3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import csp as csp_mod
from . import gap_verifier, kcenter, reduction
from .exact_geometry import rational_to_str

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path):
    try:
        if path in (None, "-"):
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _load(path):
    """Return ("csp" | "kcenter", object) for a JSON document."""
    data = _read(path)
    if not isinstance(data, dict):
        raise UsageError("input is not a JSON object")
    kind = data.get("kind")
    try:
        if kind in ("geq-csp", "leq-csp"):
            return "csp", csp_mod.from_json(data)
        if kind == "kcenter":
            return "kcenter", reduction.from_json(data)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"invalid {kind} document: {exc}") from exc
    raise UsageError(f"unknown document kind {kind!r}")


def _write(text, path):
    if path in (None, "-"):
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def _info(args, message):
    # keep stdout clean when the document itself goes there
    stream = sys.stderr if args.out in (None, "-") else sys.stdout
    print(message, file=stream)


def cmd_gen(args):
    try:
        instance = csp_mod.random_instance(
            args.d, args.N, args.delta, args.vars, args.density, args.seed, kind=args.kind
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _write(csp_mod.dumps(instance), args.out)
    s = csp_mod.summary(instance)
    _info(args, f"|V|={s['variables']} |E|={s['edges']} sum|R_a|={s['unary_values']}")
    return EXIT_OK


def cmd_reduce(args):
    kind, instance = _load(args.input)
    if kind != "csp":
        raise UsageError("reduce expects a CSP document")
    if instance.kind == "leq":
        instance = csp_mod.leq_to_geq(instance)
    kc = reduction.build(instance)
    _write(reduction.dumps(kc), args.out)
    _info(args, f"n={len(kc)} k={kc.k} r={rational_to_str(kc.params.r)} "
                f"epsilon={rational_to_str(kc.params.epsilon)}")
    return EXIT_OK


def cmd_solve(args):
    kind, obj = _load(args.input)
    method = args.method or ("backtrack" if kind == "csp" else "exact")
    if kind == "csp":
        if method != "backtrack":
            raise UsageError(f"method {method!r} needs a point-set input")
        f = csp_mod.solve(obj)
        if f is None:
            result = {"status": "unsatisfiable"}
        else:
            result = {"status": "satisfiable",
                      "assignment": [[list(a), list(f[a])] for a in obj.variables]}
        _write(json.dumps(result), args.out)
        return EXIT_OK
    kc = obj
    k = args.k if args.k is not None else kc.k
    try:
        if method == "exact":
            centers, opt_sq = kcenter.exact_solve(kc, k, args.budget)
            result = kcenter.result_to_json(kc, centers, opt_sq, "exact")
        elif method == "farthest-first":
            centers = kcenter.farthest_first(kc, k, args.start)
            result = kcenter.result_to_json(
                kc, centers, kcenter.covering_radius_sq(kc, centers), "farthest-first")
        elif method == "gap":
            if k != kc.k:
                raise UsageError("gap decision uses the instance's own k")
            verdict = kcenter.gap_decide(kc, args.budget)
            result = {"k": kc.k, "verdict": verdict.value, "method": "gap"}
        else:
            raise UsageError(f"method {method!r} needs a CSP input")
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _write(json.dumps(result), args.out)
    return EXIT_OK


def _emit_report(report, args):
    text = report.dumps() if args.format == "json" else report.to_text()
    _write(text, args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_verify(args):
    kind, obj = _load(args.input)
    name = args.input or "<stdin>"
    if kind == "kcenter":
        return _emit_report(gap_verifier.verify_lemmas(obj, name), args)
    if obj.kind == "leq":
        obj = csp_mod.leq_to_geq(obj)
    report = gap_verifier.verify(obj, name, budget=args.budget, exhaustive=args.exhaustive,
                                 subset_budget=args.subset_budget)
    return _emit_report(report, args)


def cmd_lemmas(args):
    kind, obj = _load(args.input)
    if kind == "csp":
        if obj.kind == "leq":
            obj = csp_mod.leq_to_geq(obj)
        obj = reduction.build(obj)
    return _emit_report(gap_verifier.verify_lemmas(obj, args.input or "<stdin>"), args)


def build_parser():
    parser = _Parser(prog="kcenter-gap", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, with_input=True):
        if with_input:
            p.add_argument("--in", dest="input", help="input JSON file (default stdin)")
        p.add_argument("--out", help="output file (default stdout)")
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--budget", type=int, default=kcenter.DEFAULT_BUDGET,
                       help="maximum number of k-subsets to enumerate")

    p = sub.add_parser("gen", help="generate a random grid CSP")
    common(p, with_input=False)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--N", type=int, default=3)
    p.add_argument("--delta", type=int, default=2)
    p.add_argument("--vars", type=int, default=4)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--kind", choices=csp_mod.KINDS, default="geq")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("reduce", help="build the k-Center point set of a CSP")
    common(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve", help="solve a CSP or a point set")
    common(p)
    p.add_argument("--k", type=int)
    p.add_argument("--method", choices=("backtrack", "exact", "farthest-first", "gap"))
    p.add_argument("--start", type=int, default=0, help="farthest-first start index")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check lemmas and the gap for a CSP")
    common(p)
    p.add_argument("--exhaustive", action="store_true",
                   help="also scan every size-k subset when within --subset-budget")
    p.add_argument("--subset-budget", type=int, default=gap_verifier.DEFAULT_SUBSET_BUDGET)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lemmas", help="check the geometric lemmas only")
    common(p)
    p.set_defaults(func=cmd_lemmas)
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except kcenter.BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (csp_mod.InvalidInstanceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
