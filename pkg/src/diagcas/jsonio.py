"""Text and JSON conversions shared by the CLI and the case registry."""
from __future__ import annotations

import json
import os
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .errors import CasError
from .exact import UniPoly, UniRat, rat_str, to_rat
from .multipoly import CurvePoly, MultiPoly, RationalFunction
from .parser import parse_expression, parse_polynomial
from .series import AlgebraicPrefactor, PowerSeries


def read_text_arg(value: str) -> str:
    """``value`` itself, or the contents of the file it names."""
    if os.path.isfile(value):
        with open(value, encoding="utf-8") as fh:
            return fh.read().strip()
    return value


def read_json_arg(value: str) -> Any:
    return json.loads(read_text_arg(value))


def split_vars(text: str | Sequence[str]) -> list[str]:
    if isinstance(text, str):
        return [v.strip() for v in text.split(",") if v.strip()]
    return list(text)


def parse_unirat(text: str, var: str = "x", params: Mapping[str, object] | None = None) -> UniRat:
    """A rational function of one variable, with optional numeric parameters bound first."""
    params = dict(params or {})
    vars = [var] + [p for p in params if p != var]
    r = parse_expression(str(text), vars)
    if params:
        values = {k: to_rat(v) for k, v in params.items()}
        r = RationalFunction(r.num.evaluate(values), r.den.evaluate(values))
    return UniRat(r.num.to_unipoly(var), r.den.to_unipoly(var))


def parse_unipoly(text: str, var: str = "x") -> UniPoly:
    return parse_polynomial(str(text), [var]).to_unipoly(var)


def bind_numeric(poly: MultiPoly, params: Mapping[str, object] | None) -> MultiPoly:
    if not params:
        return poly
    return poly.evaluate({k: to_rat(v) for k, v in params.items()})


def parse_curve(text: str, curve_vars: Sequence[str], param: str = "p",
                params: Mapping[str, object] | None = None) -> CurvePoly:
    names = list(curve_vars) + [param] + [k for k in (params or {}) if k not in curve_vars and k != param]
    poly = bind_numeric(parse_polynomial(text, names), params)
    poly = poly.with_vars(list(curve_vars) + [param])
    return CurvePoly.from_multipoly(poly, tuple(curve_vars), param)


def prefactor_from_spec(factors: Sequence[Sequence], var: str = "x") -> AlgebraicPrefactor:
    """[[base expression, exponent], ...] -> AlgebraicPrefactor."""
    return AlgebraicPrefactor([(parse_unirat(base, var), to_rat(str(e))) for base, e in factors])


def rats(values: Sequence) -> list[Fraction]:
    return [to_rat(str(v)) for v in values]


def series_from_json(data: Mapping) -> PowerSeries:
    if not isinstance(data, Mapping) or "coeffs" not in data:
        raise CasError("series JSON needs a \"coeffs\" list")
    return PowerSeries.from_json(data)


def unirat_json(r: UniRat) -> dict:
    return {"expr": str(r), **r.to_json()}


def dumps(obj: Any, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(obj, indent=2, ensure_ascii=False)
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


__all__ = ["read_text_arg", "read_json_arg", "split_vars", "parse_unirat", "parse_unipoly",
           "parse_curve", "bind_numeric", "prefactor_from_spec", "rats", "series_from_json",
           "unirat_json", "dumps", "rat_str"]
