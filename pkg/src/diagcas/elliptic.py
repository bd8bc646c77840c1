"""j-invariants of curves quadratic in one variable, over Q(p).

A curve A(x) y^2 + B(x) y + C(x) = 0 is birational to w^2 = D(x) with
w = 2 A y + B and D = B^2 - 4 A C.  For a quartic D = a x^4 + b x^3 + c x^2 + d x + e
the binary-quartic invariants are

    I = 12 a e - 3 b d + c^2
    J = 72 a c e + 9 b c d - 27 a d^2 - 27 b^2 e - 2 c^3

and j = 1728 * 4 I^3 / (4 I^3 - J^2).  A cubic D is the quartic with a = 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (DegenerateCurve, DiscriminantDegreeTooHigh, HauptmodulInfinite,
                     NotQuadratic)
from .exact import UniPoly, UniRat
from .multipoly import CurvePoly, MultiPoly


@dataclass(frozen=True)
class QuadraticSplit:
    """curve = A*v^2 + B*v + C; A, B, C, disc are lists indexed by degree in ``other``."""

    var: str
    other: str
    param: str
    A: tuple[UniPoly, ...]
    B: tuple[UniPoly, ...]
    C: tuple[UniPoly, ...]
    disc: tuple[UniPoly, ...]

    def disc_degree(self) -> int:
        return len(self.disc) - 1


@dataclass(frozen=True)
class QuarticInvariants:
    I: UniPoly
    J: UniPoly


def _trim(coeffs: list[UniPoly]) -> tuple[UniPoly, ...]:
    while coeffs and coeffs[-1].is_zero():
        coeffs.pop()
    return tuple(coeffs)


def quadratic_split(c: CurvePoly, var: str) -> QuadraticSplit:
    if var == c.xvar:
        c = c.swap()
    elif var != c.yvar:
        raise ValueError(f"{var} is not a variable of the curve")
    deg = c.degree(var)
    if deg != 2:
        raise NotQuadratic(f"curve has degree {deg} in {var}, not 2")
    zero = UniPoly([], c.param)
    n = c.degree(c.xvar) + 1
    parts = {k: [zero] * n for k in range(3)}
    for (i, j), p in c.coeffs.items():
        parts[j][i] = p
    a, b, cc = parts[2], parts[1], parts[0]
    disc = [zero] * (2 * n - 1)
    for i in range(n):
        for k in range(n):
            disc[i + k] = disc[i + k] + b[i] * b[k] - 4 * a[i] * cc[k]
    return QuadraticSplit(var, c.xvar, c.param, _trim(list(a)), _trim(list(b)), _trim(list(cc)),
                          _trim(disc))


def quartic_invariants(coeffs: Sequence[UniPoly]) -> QuarticInvariants:
    """Invariants of sum coeffs[k] x^k, read as a binary quartic (degree <= 4)."""
    if len(coeffs) > 5:
        raise DiscriminantDegreeTooHigh(f"degree {len(coeffs) - 1} exceeds 4")
    var = next((p.var for p in coeffs), "p")
    zero = UniPoly([], var)
    padded = list(coeffs) + [zero] * (5 - len(coeffs))
    e, d, c, b, a = padded
    I = 12 * a * e - 3 * b * d + c * c
    J = 72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * b * b * e - 2 * c * c * c
    return QuarticInvariants(I.with_var(var), J.with_var(var))


def j_from_invariants(inv: QuarticInvariants) -> UniRat:
    i3 = inv.I ** 3
    den = 4 * i3 - inv.J * inv.J
    if den.is_zero():
        raise DegenerateCurve("4 I^3 - J^2 vanishes identically")
    return UniRat(1728 * 4 * i3, den)


def _checked_split(c: CurvePoly, var: str) -> QuadraticSplit:
    split = quadratic_split(c, var)
    if split.disc_degree() > 4:
        raise DiscriminantDegreeTooHigh(
            f"discriminant has degree {split.disc_degree()} in {split.other}; "
            "a genus-2 candidate, not handled")
    return split


def j_invariant(c: CurvePoly, var: str) -> UniRat:
    split = _checked_split(c, var)
    return j_from_invariants(quartic_invariants(split.disc)).with_var(c.param)


def hauptmodul_from_j(j: UniRat) -> UniRat:
    if j.is_zero():
        raise HauptmodulInfinite("j = 0, so the Hauptmodul 1728/j is infinite")
    return (1728 / j).with_var(j.var)


def hauptmodul(c: CurvePoly, var: str) -> UniRat:
    """1728 / j as a canonical rational function of the parameter."""
    return hauptmodul_from_j(j_invariant(c, var))


def verify_relation(rel: MultiPoly, a: UniRat, b: UniRat, symbols: tuple[str, str] = ("A", "B")) -> bool:
    """True iff rel(a(x), b(x)) vanishes identically.

    Denominators are cleared by homogenising: the sum of
    c * an^i * ad^(da - i) * bn^k * bd^(db - k) over the terms of rel is tested for zero.
    """
    sa, sb = symbols
    for v in rel.vars:
        if v not in symbols and rel.depends_on(v):
            raise ValueError(f"relation depends on {v}, expected only {symbols}")
    ia = rel.index(sa) if sa in rel.vars else None
    ib = rel.index(sb) if sb in rel.vars else None
    da = rel.degree(sa) if ia is not None else 0
    db = rel.degree(sb) if ib is not None else 0
    var = a.var if a.num.degree() > 0 or a.den.degree() > 0 else b.var
    a, b = a.with_var(var), b.with_var(var)

    def powers(p: UniPoly, n: int) -> list[UniPoly]:
        out = [UniPoly([1], var)]
        for _ in range(n):
            out.append(out[-1] * p)
        return out

    an, ad = powers(a.num, da), powers(a.den, da)
    bn, bd = powers(b.num, db), powers(b.den, db)
    total = UniPoly([], var)
    for e, coef in rel.terms.items():
        i = e[ia] if ia is not None else 0
        k = e[ib] if ib is not None else 0
        total = total + an[i] * ad[da - i] * bn[k] * bd[db - k] * coef
    return total.is_zero()
