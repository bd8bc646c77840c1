"""Command-line front end.  Every subcommand prints JSON unless --pretty is given.

Exit codes: 0 success, 1 failed check or computation error, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from . import registry as reg
from .diagonal import diagonal
from .elliptic import hauptmodul_from_j, j_invariant
from .errors import CasError, ParseError, UnknownCase
from .jsonio import (dumps, parse_unirat, prefactor_from_spec, rats, read_json_arg,
                     read_text_arg, series_from_json, split_vars, unirat_json)
from .lattice import genus_report
from .ode import DiffOp, apply, guess_ode, GUESS_MARGIN
from .series import pullbacked_solution

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _params(text: str | None) -> dict[str, str]:
    """'b2=1,c3=2' -> {'b2': '1', 'c3': '2'}."""
    out = {}
    for item in split_vars(text or ""):
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise UsageError(f"bad parameter binding {item!r}, expected NAME=VALUE")
        out[name.strip()] = value.strip()
    return out


def _emit(obj, pretty: bool) -> None:
    print(obj if pretty and isinstance(obj, str) else dumps(obj, pretty))


def _curve(args):
    """Curve from --curve, or from a denominator with --eliminate VAR."""
    vars = split_vars(args.vars)
    params = _params(args.params)
    if args.eliminate:
        if args.eliminate not in vars:
            raise UsageError(f"--eliminate {args.eliminate} is not among --vars")
        spec = {"expr": read_text_arg(args.curve), "vars": vars, "variable": args.eliminate,
                "param": args.param, "params": params}
        rest = [v for v in vars if v != args.eliminate]
        if len(rest) > 2:
            if not args.curve_vars:
                raise UsageError("eliminating from more than three variables needs --curve-vars")
            spec["curve_vars"] = split_vars(args.curve_vars)
        return reg.build_curve({"eliminate": spec}, random.Random(0))
    if len(vars) != 2:
        raise UsageError(f"a curve needs exactly two variables, got {vars}")
    spec = {"expr": read_text_arg(args.curve), "vars": vars, "param": args.param, "params": params}
    return reg.build_curve({"curve": spec}, random.Random(0))


def cmd_diag(args) -> int:
    spec = {"expr": read_text_arg(args.expr), "vars": split_vars(args.vars), "params": _params(args.params)}
    r = reg.build_integrand(spec, random.Random(0))
    s = diagonal(r, args.order, force=args.force, var=args.var)
    _emit(str(s) if args.pretty else s.to_json(), args.pretty)
    return EXIT_OK


def cmd_genus(args) -> int:
    c = _curve(args)
    _emit(genus_report(c).to_json(), args.pretty)
    return EXIT_OK


def _jinv(args):
    c = _curve(args)
    return j_invariant(c, args.quadratic_in)


def cmd_jinv(args) -> int:
    j = _jinv(args)
    _emit(str(j) if args.pretty else unirat_json(j), args.pretty)
    return EXIT_OK


def cmd_hauptmodul(args) -> int:
    h = hauptmodul_from_j(_jinv(args))
    _emit(str(h) if args.pretty else unirat_json(h), args.pretty)
    return EXIT_OK


def cmd_pullback(args) -> int:
    factors = []
    for item in args.prefactor or []:
        base, sep, exp = item.rpartition(":")
        if not sep:
            raise UsageError(f"bad prefactor {item!r}, expected BASE:EXPONENT")
        factors.append((base, exp))
    a = prefactor_from_spec(factors, args.var)
    h = parse_unirat(read_text_arg(args.h), args.var)
    s = pullbacked_solution(a, (rats(split_vars(args.upper)), rats(split_vars(args.lower))),
                            h, args.order, args.var)
    _emit(str(s) if args.pretty else s.to_json(), args.pretty)
    return EXIT_OK


def cmd_guess(args) -> int:
    s = series_from_json(read_json_arg(args.series))
    op = guess_ode(s, args.max_order, args.max_degree, args.margin)
    if op is None:
        _emit(None, args.pretty)
    else:
        _emit(str(op) if args.pretty else {**op.to_json(), "expr": str(op)}, args.pretty)
    return EXIT_OK


def cmd_apply(args) -> int:
    op = DiffOp.from_json(read_json_arg(args.op))
    s = series_from_json(read_json_arg(args.series))
    out = apply(op, s)
    zero = out.is_zero()
    _emit({"zero": zero, "valuation": out.valuation(), "result": out.to_json()}, args.pretty)
    return EXIT_FAIL if args.check and not zero else EXIT_OK


def cmd_verify(args) -> int:
    cases = reg.load_registry(args.registry)
    if args.case:
        reports = [reg.run_case(args.case, cases, args.seed)]
        summary = reg.Summary(reports)
    else:
        summary = reg.run_all(args.tag, cases, args.seed, args.workers)
    if args.pretty:
        for r in summary.reports:
            print(r.line())
        print(f"{summary.passed}/{summary.total} passed")
    else:
        _emit(summary.to_json(), False)
    return EXIT_OK if summary.ok else EXIT_FAIL


def _curve_args(p: argparse.ArgumentParser, quadratic: bool) -> None:
    p.add_argument("--curve", required=True, help="polynomial text or a file containing it")
    p.add_argument("--vars", required=True, help="comma-separated variables, e.g. x,y")
    p.add_argument("--param", default="p", help="name of the curve parameter (default p)")
    p.add_argument("--params", help="numeric bindings, e.g. b2=1,c3=2")
    p.add_argument("--eliminate", metavar="VAR",
                   help="treat --curve as a denominator and eliminate VAR = p/(other vars)")
    p.add_argument("--curve-vars", help="the two curve variables left after --eliminate")
    if quadratic:
        p.add_argument("--quadratic-in", required=True, metavar="VAR")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="diagcas", description=__doc__.splitlines()[0])
    top.add_argument("--pretty", action="store_true", help="human-readable output")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diag", help="diagonal series of a rational function")
    p.add_argument("--expr", required=True, help="expression text or a file containing it")
    p.add_argument("--vars", required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--params", help="numeric bindings, e.g. a=1,b=2")
    p.add_argument("--var", default="x", help="name of the series variable")
    p.add_argument("--force", action="store_true", help="skip the cost guard")
    p.set_defaults(func=cmd_diag)

    p = sub.add_parser("genus", help="generic genus from the Newton polygon")
    _curve_args(p, quadratic=False)
    p.set_defaults(func=cmd_genus)

    p = sub.add_parser("jinv", help="j-invariant of a curve quadratic in one variable")
    _curve_args(p, quadratic=True)
    p.set_defaults(func=cmd_jinv)

    p = sub.add_parser("hauptmodul", help="1728/j of a curve quadratic in one variable")
    _curve_args(p, quadratic=True)
    p.set_defaults(func=cmd_hauptmodul)

    p = sub.add_parser("pullback2f1", help="A(x) * pFq(upper; lower; h(x)) as a series")
    p.add_argument("--upper", required=True, help="comma-separated rationals")
    p.add_argument("--lower", required=True)
    p.add_argument("--h", required=True, help="rational function h(x), text or file; use --h=-... for a leading minus")
    p.add_argument("--prefactor", action="append", metavar="BASE:EXP",
                   help="algebraic prefactor factor; repeatable")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--var", default="x")
    p.set_defaults(func=cmd_pullback)

    p = sub.add_parser("guess-ode", help="least-order operator annihilating a series")
    p.add_argument("--series", required=True, help="series JSON, text or file")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--margin", type=int, default=GUESS_MARGIN)
    p.set_defaults(func=cmd_guess)

    p = sub.add_parser("apply-ode", help="apply an operator to a series")
    p.add_argument("--op", required=True, help="operator JSON, text or file")
    p.add_argument("--series", required=True)
    p.add_argument("--check", action="store_true", help="exit 1 unless the result is zero")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("verify", help="run golden cases from the registry")
    which = p.add_mutually_exclusive_group()
    which.add_argument("--case", metavar="NAME")
    which.add_argument("--all", action="store_true", help="run every case (the default)")
    p.add_argument("--tag")
    p.add_argument("--seed", type=int, default=reg.DEFAULT_SEED)
    p.add_argument("--registry", help=f"registry file (default: ${reg.REGISTRY_ENV} or the packaged one)")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return top


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, UnknownCase, json.JSONDecodeError, KeyError) as exc:
        print(dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_USAGE
    except (CasError, ValueError, ZeroDivisionError) as exc:
        print(dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
