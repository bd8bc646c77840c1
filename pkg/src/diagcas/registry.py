"""Golden-case registry: worked examples stored as data and checked exactly.

The registry is a YAML stream with one document per case.  Each case names a
``check`` (series_equal, annihilation_only, hauptmodul_equal, genus_equal,
relation_holds), a ``source`` describing what to compute, and an ``expected``
block.  The packaged registry can be replaced by pointing the environment
variable DIAGCAS_REGISTRY at another file.
"""
from __future__ import annotations

import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any, Mapping, Sequence

import yaml

from .curves import eliminate_to_curve
from .diagonal import diagonal
from .elliptic import hauptmodul, hauptmodul_from_j, j_invariant, verify_relation
from .errors import CasError, UnknownCase
from .exact import UniRat, rat_str, to_rat
from .jsonio import bind_numeric, parse_curve, parse_unipoly, parse_unirat, prefactor_from_spec, rats
from .lattice import genus_report
from .multipoly import CurvePoly, MultiPoly, RationalFunction, substitute
from .ode import DiffOp, apply
from .parser import parse_expression, parse_polynomial
from .series import PowerSeries, hypergeom_series, pullbacked_solution

REGISTRY_ENV = "DIAGCAS_REGISTRY"
CHECKS = ("series_equal", "annihilation_only", "hauptmodul_equal", "genus_equal", "relation_holds")
DEFAULT_SEED = 20240917


@dataclass
class GoldenCase:
    name: str
    check: str
    source: dict
    expected: dict
    citation: str = ""
    tags: list[str] = field(default_factory=list)
    order: int | None = None
    note: str = ""

    @classmethod
    def from_mapping(cls, data: Mapping) -> "GoldenCase":
        missing = [k for k in ("name", "check", "source", "expected") if k not in data]
        if missing:
            raise CasError(f"registry case {data.get('name', '?')} lacks {', '.join(missing)}")
        if data["check"] not in CHECKS:
            raise CasError(f"case {data['name']}: unknown check {data['check']!r}")
        return cls(name=str(data["name"]), check=data["check"], source=dict(data["source"]),
                   expected=dict(data["expected"]), citation=str(data.get("citation", "")),
                   tags=list(data.get("tags", [])), order=data.get("order"),
                   note=str(data.get("note", "")))


@dataclass
class CaseReport:
    name: str
    check: str
    passed: bool
    seconds: float
    citation: str
    tags: list[str]
    details: dict = field(default_factory=dict)
    mismatch: dict | None = None
    error: str | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "check": self.check, "passed": self.passed,
               "seconds": round(self.seconds, 4), "citation": self.citation, "tags": self.tags,
               "details": self.details}
        if self.mismatch is not None:
            out["mismatch"] = self.mismatch
        if self.error is not None:
            out["error"] = self.error
        return out

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = ""
        if self.mismatch:
            extra = f"  first mismatch at {self.mismatch}"
        elif self.error:
            extra = f"  error: {self.error}"
        return f"{status} {self.name} [{self.check}] {self.seconds:.2f}s  ({self.citation}){extra}"


def default_registry_path() -> str:
    env = os.environ.get(REGISTRY_ENV)
    if env:
        return env
    return str(resources.files("diagcas").joinpath("data/cases.yaml"))


def load_registry(path: str | None = None) -> dict[str, GoldenCase]:
    path = path or default_registry_path()
    with open(path, encoding="utf-8") as fh:
        docs = [d for d in yaml.safe_load_all(fh) if d]
    cases: dict[str, GoldenCase] = {}
    for d in docs:
        case = GoldenCase.from_mapping(d)
        if case.name in cases:
            raise CasError(f"duplicate case name {case.name}")
        cases[case.name] = case
    return cases


# building inputs


def _params(spec: Mapping | None, rng: random.Random) -> dict[str, Fraction]:
    """Numeric parameter values; the word "random" draws a nonzero integer from the seeded RNG."""
    out = {}
    for k, v in (spec or {}).items():
        if v == "random":
            out[k] = Fraction(rng.choice([-1, 1]) * rng.randint(1, 97))
        else:
            out[k] = to_rat(str(v))
    return out


def build_integrand(spec: Mapping, rng: random.Random) -> RationalFunction:
    vars = list(spec["vars"])
    params = _params(spec.get("params"), rng)
    bindings = spec.get("bindings") or {}
    prod_name = spec.get("product_param")
    extra = [k for k in list(params) + list(bindings) + ([prod_name] if prod_name else []) if k not in vars]
    names = vars + list(dict.fromkeys(extra))
    r = parse_expression(spec["expr"], names)
    if params:
        r = RationalFunction(bind_numeric(r.num, params), bind_numeric(r.den, params))
    if bindings:
        r = substitute(r, {k: parse_expression(str(v), names) for k, v in bindings.items()}, names)
    if prod_name:
        prod = MultiPoly(names, {tuple(1 if n in vars else 0 for n in names): 1})
        r = substitute(r, {prod_name: prod}, names)
    return r.with_vars(vars)


def _pullbacked_sum(terms: Sequence[Mapping], order: int, var: str = "x") -> PowerSeries:
    total = PowerSeries.zero(order, var)
    for t in terms:
        a = prefactor_from_spec(t.get("prefactor") or [], var)
        h = parse_unirat(t.get("h", var), var)
        s = pullbacked_solution(a, (rats(t["upper"]), rats(t["lower"])), h, order, var)
        power = int(t.get("power", 1))
        if power != 1:
            s = s ** power
        total = total + s.scale(to_rat(str(t.get("weight", 1))))
    return total


def build_series(spec: Mapping, order: int, rng: random.Random) -> PowerSeries:
    if "series" in spec:
        s = PowerSeries(rats(spec["series"]))
        return s.truncate(min(order, s.order))
    if "diagonal" in spec:
        d = spec["diagonal"]
        return diagonal(build_integrand(d, rng), order, force=bool(d.get("force", False)))
    if "pullbacked" in spec:
        return _pullbacked_sum(spec["pullbacked"], order)
    if "hypergeom" in spec:
        h = spec["hypergeom"]
        return hypergeom_series(rats(h["upper"]), rats(h["lower"]), order)
    raise CasError(f"no series source among {sorted(spec)}")


def build_curve(spec: Mapping, rng: random.Random):
    """CurvePoly (or a MultiPoly when the elimination leaves extra variables)."""
    if "curve" in spec:
        c = spec["curve"]
        return parse_curve(c["expr"], c["vars"], c.get("param", "p"), _params(c.get("params"), rng))
    if "eliminate" in spec:
        e = spec["eliminate"]
        params = _params(e.get("params"), rng)
        vars = list(e["vars"])
        names = vars + [k for k in params if k not in vars]
        d = bind_numeric(parse_polynomial(e["expr"], names), params).with_vars(vars)
        c = eliminate_to_curve(d, e["variable"], e.get("param", "p"))
        keep = e.get("curve_vars")
        if keep and isinstance(c, MultiPoly):
            c = CurvePoly.from_multipoly(c.with_vars(list(keep) + [e.get("param", "p")]),
                                         tuple(keep), e.get("param", "p"))
        return c
    raise CasError(f"no curve source among {sorted(spec)}")


def _operator(spec, var: str = "x") -> DiffOp:
    return DiffOp([parse_unipoly(str(c), var) for c in spec], var)


# checks


def _series_mismatch(got: PowerSeries, want: PowerSeries) -> dict | None:
    k = got.first_mismatch(want)
    if k is None:
        return None
    g = rat_str(got[k]) if k <= got.order else None
    w = rat_str(want[k]) if k <= want.order else None
    return {"index": k, "expected": w, "got": g}


def _check_series_equal(case: GoldenCase, rng) -> tuple[bool, dict, dict | None]:
    order = int(case.order)
    got = build_series(case.source, order, rng)
    want = build_series(case.expected, order, rng)
    if got.order < order or want.order < order:
        return False, {"series": got.to_json()}, {"index": min(got.order, want.order) + 1,
                                                   "expected": "more terms", "got": "truncated"}
    mm = _series_mismatch(got, want)
    return mm is None, {"series": got.to_json()}, mm


def _check_annihilation(case: GoldenCase, rng):
    order = int(case.order)
    s = build_series(case.source, order, rng)
    op = _operator(case.expected["operator"])
    r = apply(op, s)
    k = r.valuation()
    mm = None if k is None else {"index": k, "expected": "0", "got": rat_str(r[k])}
    return mm is None, {"operator": op.to_json(), "checked_through": r.order, "series": s.to_json()}, mm


def _check_hauptmodul(case: GoldenCase, rng):
    src, exp = case.source, case.expected
    param = src.get("param", "p")
    if "j" in src:
        j = parse_unirat(src["j"], param)
    else:
        c = build_curve(src, rng)
        j = j_invariant(c, src["quadratic_in"])
    details = {"j": str(j)}
    exp_params = _params(exp.get("params"), rng)
    if "hauptmodul" in exp:
        got = hauptmodul_from_j(j)
        want = parse_unirat(exp["hauptmodul"], param, exp_params)
        details["hauptmodul"] = str(got)
    else:
        got = j
        want = parse_unirat(exp["j"], param, exp_params)
    ok = got == want
    return ok, details, None if ok else {"index": "value", "expected": str(want), "got": str(got)}


def _check_genus(case: GoldenCase, rng):
    c = build_curve(case.source, rng)
    rep = genus_report(c, case.source.get("curve_vars"))
    want = int(case.expected["genus"])
    ok = rep.generic_genus == want
    return ok, rep.to_json(), None if ok else {"index": "genus", "expected": want, "got": rep.generic_genus}


def _check_relation(case: GoldenCase, rng):
    src = case.source
    var = src.get("var", "x")
    symbols = tuple(src.get("symbols", ("A", "B")))
    rel = parse_polynomial(src["relation"], list(symbols))
    a = parse_unirat(src["A"], var, _params(src.get("params"), rng))
    b = parse_unirat(src["B"], var, _params(src.get("params"), rng))
    forward = verify_relation(rel, a, b, symbols)
    backward = verify_relation(rel, b, a, symbols)
    orientation = "as_given" if forward else ("swapped" if backward else "none")
    want = case.expected.get("orientation", "as_given")
    ok = orientation == want or (want == "either" and orientation != "none")
    details = {"orientation": orientation, "as_given": forward, "swapped": backward}
    return ok, details, None if ok else {"index": "orientation", "expected": want, "got": orientation}


_CHECKERS = {
    "series_equal": _check_series_equal,
    "annihilation_only": _check_annihilation,
    "hauptmodul_equal": _check_hauptmodul,
    "genus_equal": _check_genus,
    "relation_holds": _check_relation,
}


def run_golden(case: GoldenCase, seed: int = DEFAULT_SEED) -> CaseReport:
    rng = random.Random(f"{seed}:{case.name}")
    t0 = time.perf_counter()
    try:
        ok, details, mm = _CHECKERS[case.check](case, rng)
        err = None
    except CasError as exc:
        ok, details, mm, err = False, {}, None, f"{type(exc).__name__}: {exc}"
    if case.note:
        details = {**details, "note": case.note}
    return CaseReport(case.name, case.check, ok, time.perf_counter() - t0, case.citation,
                      case.tags, details, mm, err)


def run_case(name: str, registry: Mapping[str, GoldenCase] | None = None,
             seed: int = DEFAULT_SEED) -> CaseReport:
    registry = load_registry() if registry is None else registry
    if name not in registry:
        raise UnknownCase(f"unknown case {name!r}; available: {', '.join(sorted(registry))}")
    return run_golden(registry[name], seed)


@dataclass
class Summary:
    reports: list[CaseReport]

    @property
    def total(self) -> int:
        return len(self.reports)

    @property
    def passed(self) -> int:
        return sum(r.passed for r in self.reports)

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def to_json(self) -> dict:
        return {"total": self.total, "passed": self.passed, "failed": self.total - self.passed,
                "ok": self.ok, "cases": [r.to_json() for r in self.reports]}


def run_all(tag: str | None = None, registry: Mapping[str, GoldenCase] | None = None,
            seed: int = DEFAULT_SEED, workers: int = 1) -> Summary:
    """Run every case (optionally only those tagged ``tag``); reports keep registry order."""
    registry = load_registry() if registry is None else registry
    chosen = [c for c in registry.values() if tag is None or tag in c.tags]
    if workers > 1 and len(chosen) > 1:
        # cases share nothing mutable, so threads are safe
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return Summary(list(pool.map(lambda c: run_golden(c, seed), chosen)))
    return Summary([run_golden(c, seed) for c in chosen])
