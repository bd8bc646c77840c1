"""Hyperbola elimination, reduction modulo a quadratic curve, and the involution of
surfaces quadratic in one variable."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import NotDependent, NotQuadratic
from .multipoly import CurvePoly, MultiPoly, RationalFunction, substitute


def normalize_content(poly: MultiPoly, monomial_vars=None) -> MultiPoly:
    """Primitive integer form with any pure monomial factor in ``monomial_vars`` removed."""
    if poly.is_zero():
        return poly
    if monomial_vars is not None:
        poly = poly.divide_monomial(poly.monomial_content(monomial_vars))
    return poly.primitive()


def eliminate_to_curve(d: MultiPoly, eliminated: str, p: str = "p", *, strip_monomial: bool = True):
    """Substitute ``eliminated = p / (product of the other variables)`` and clear denominators.

    The result lives in the remaining variables plus ``p``.  It is made primitive
    over Z and, unless ``strip_monomial`` is false, divided by the largest pure
    monomial in the remaining variables.  With three variables a CurvePoly is
    returned, otherwise a MultiPoly.
    """
    if not d.depends_on(eliminated):
        raise NotDependent(f"polynomial does not depend on {eliminated}")
    if p in d.vars:
        raise ValueError(f"parameter name {p} already used by the polynomial")
    others = [v for v in d.vars if v != eliminated]
    out_vars = tuple(others) + (p,)
    i = d.index(eliminated)
    n = d.degree(eliminated)
    terms = {}
    for e, c in d.terms.items():
        j = e[i]
        rest = [k + (n - j) for k in e[:i] + e[i + 1:]]
        key = tuple(rest) + (j,)
        terms[key] = terms.get(key, 0) + c
    curve = MultiPoly(out_vars, terms)
    curve = normalize_content(curve, others if strip_monomial else None)
    if len(others) == 2:
        return CurvePoly.from_multipoly(curve, (others[0], others[1]), p)
    return curve


def quadratic_coefficients(c: MultiPoly, var: str) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    if var not in c.vars or c.degree(var) != 2:
        raise NotQuadratic(f"degree in {var} is {c.degree(var) if var in c.vars else 0}, not 2")
    parts = c.coeffs_in(var)
    zero = MultiPoly(c.vars)
    return parts.get(2, zero), parts.get(1, zero), parts.get(0, zero)


def reduce_modulo_curve(q: MultiPoly, c: MultiPoly, y: str) -> tuple[MultiPoly, MultiPoly]:
    """Reduce ``q`` modulo ``c = A*y^2 + B*y + C`` over the fraction field in the other variables.

    Returns ``(remainder, multiplier)`` with ``multiplier * q = remainder`` modulo
    ``c``, where ``multiplier`` is a power of A and the remainder has degree < 2 in y.
    """
    q, c = q._align(c)
    a, b, cc = quadratic_coefficients(c, y)
    yi = q.index(y)
    multiplier = MultiPoly.const(1, q.vars)
    r = q
    while not r.is_zero() and r.degree(y) >= 2:
        k = r.degree(y)
        lead = r.coeffs_in(y)[k]
        shift = tuple(k - 2 if j == yi else 0 for j in range(len(q.vars)))
        r = a * r - (lead * c).mul_monomial(shift)
        multiplier = multiplier * a
    return r, multiplier


@dataclass(frozen=True)
class Involution:
    """The birational map v -> C/(A*v) preserving s = A v^2 + B v + C up to a cofactor."""

    var: str
    image: RationalFunction
    cofactor: RationalFunction

    def apply(self, r) -> RationalFunction:
        return substitute(r, {self.var: self.image}, r.vars)

    def __call__(self, r) -> RationalFunction:
        return self.apply(r)


def triquadratic_involution(s: MultiPoly, v: str) -> Involution:
    a, _, c = quadratic_coefficients(s, v)
    vv = MultiPoly.gen(v, s.vars)
    image = RationalFunction(c, a * vv)
    cofactor = RationalFunction(c, a * vv * vv)
    return Involution(v, image, cofactor)
