"""Sparse multivariate polynomials and rational functions over Q.

A ``MultiPoly`` carries an ordered tuple of variable names and a map from exponent
tuples to nonzero Fractions.  Terms print in graded lexicographic order.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from .errors import SubstitutionError, ZeroDenominator
from .exact import Scalar, UniPoly, _lcm, format_terms, to_rat

Exps = tuple[int, ...]


def grlex_key(exps: Exps):
    return (sum(exps), exps)


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[Exps, object] | None = None):
        self.vars: tuple[str, ...] = tuple(vars)
        clean: dict[Exps, Fraction] = {}
        n = len(self.vars)
        for e, c in (terms or {}).items():
            c = to_rat(c)
            if c:
                e = tuple(e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match {n} variables")
                clean[e] = c
        self.terms = clean

    @classmethod
    def _raw(cls, vars: tuple[str, ...], terms: dict[Exps, Fraction]) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.vars = vars
        obj.terms = terms
        return obj

    @classmethod
    def const(cls, c, vars: Sequence[str]) -> "MultiPoly":
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def gen(cls, name: str, vars: Sequence[str]) -> "MultiPoly":
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls(vars, {tuple(e): 1})

    @classmethod
    def from_unipoly(cls, p: UniPoly, var: str, vars: Sequence[str]) -> "MultiPoly":
        vars = tuple(vars)
        i = vars.index(var)
        terms = {}
        for k, c in enumerate(p.coeffs):
            if c:
                e = [0] * len(vars)
                e[i] = k
                terms[tuple(e)] = c
        return cls._raw(vars, terms)

    # basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def index(self, var: str) -> int:
        return self.vars.index(var)

    def degree(self, var: str) -> int:
        if not self.terms:
            return -1
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def min_degree(self, var: str) -> int:
        i = self.vars.index(var)
        return min(e[i] for e in self.terms) if self.terms else 0

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def depends_on(self, var: str) -> bool:
        return var in self.vars and self.degree(var) > 0

    def sorted_terms(self) -> list[tuple[Exps, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_coefficient(self) -> Fraction:
        return self.sorted_terms()[0][1] if self.terms else Fraction(0)

    # variable bookkeeping

    def with_vars(self, vars: Sequence[str]) -> "MultiPoly":
        """Re-express over a new ordered variable list (embedding or reordering)."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        pos = []
        for i, v in enumerate(self.vars):
            if v in vars:
                pos.append((i, vars.index(v)))
            elif self.degree(v) > 0:
                raise ValueError(f"variable {v} missing from target {vars}")
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars)
            for i, j in pos:
                ne[j] = e[i]
            terms[tuple(ne)] = c
        return MultiPoly._raw(vars, terms)

    def _align(self, other: "MultiPoly") -> tuple["MultiPoly", "MultiPoly"]:
        if self.vars == other.vars:
            return self, other
        merged = list(self.vars)
        for v in other.vars:
            if v not in merged:
                merged.append(v)
        return self.with_vars(merged), other.with_vars(merged)

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            return self._align(other)
        if isinstance(other, Scalar):
            return self, MultiPoly.const(other, self.vars)
        return None

    # ring operations

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MultiPoly._raw(a.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Scalar):
            other = to_rat(other)
            if not other:
                return MultiPoly._raw(self.vars, {})
            return MultiPoly._raw(self.vars, {e: c * other for e, c in self.terms.items()})
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        terms: dict[Exps, Fraction] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return MultiPoly._raw(a.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Scalar):
            other = MultiPoly.const(other, self.vars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._align(other)
        return a.terms == b.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # structure

    def coeffs_in(self, var: str) -> dict[int, "MultiPoly"]:
        """Coefficients with respect to ``var``; ``var`` stays in vars with exponent 0."""
        i = self.vars.index(var)
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[i]
            ne = e[:i] + (0,) + e[i + 1:]
            out.setdefault(k, {})[ne] = c
        return {k: MultiPoly._raw(self.vars, t) for k, t in out.items()}

    def monomial_content(self, vars: Iterable[str] | None = None) -> Exps:
        """Componentwise minimum exponent, restricted to ``vars`` if given."""
        if not self.terms:
            return (0,) * len(self.vars)
        keep = set(self.vars if vars is None else vars)
        mins = [min(e[i] for e in self.terms) for i in range(len(self.vars))]
        return tuple(m if v in keep else 0 for m, v in zip(mins, self.vars))

    def divide_monomial(self, shift: Exps) -> "MultiPoly":
        terms = {}
        for e, c in self.terms.items():
            ne = tuple(a - b for a, b in zip(e, shift))
            if min(ne, default=0) < 0:
                raise ValueError("monomial does not divide polynomial")
            terms[ne] = c
        return MultiPoly._raw(self.vars, terms)

    def mul_monomial(self, shift: Exps, c=1) -> "MultiPoly":
        c = to_rat(c)
        return MultiPoly._raw(self.vars, {tuple(a + b for a, b in zip(e, shift)): v * c
                                          for e, v in self.terms.items()})

    def content(self) -> Fraction:
        num, den = 0, 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = _lcm(den, c.denominator)
        return Fraction(num, den) if num else Fraction(0)

    def primitive(self) -> "MultiPoly":
        """Integer coefficients of content 1, grlex-leading coefficient positive."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        return self * (1 / c)

    def evaluate(self, values: Mapping[str, object]) -> "MultiPoly":
        """Partial evaluation at rational values; evaluated variables are dropped."""
        idx = [(i, to_rat(values[v])) for i, v in enumerate(self.vars) if v in values]
        keep = [i for i, v in enumerate(self.vars) if v not in values]
        terms: dict[Exps, Fraction] = {}
        for e, c in self.terms.items():
            for i, val in idx:
                c = c * val ** e[i]
            ne = tuple(e[i] for i in keep)
            s = terms.get(ne, 0) + c
            if s:
                terms[ne] = s
            else:
                terms.pop(ne, None)
        return MultiPoly._raw(tuple(self.vars[i] for i in keep), terms)

    def derivative(self, var: str) -> "MultiPoly":
        i = self.vars.index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                terms[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        return MultiPoly._raw(self.vars, terms)

    def to_unipoly(self, var: str) -> UniPoly:
        """View as a univariate polynomial; fails if other variables occur."""
        i = self.vars.index(var) if var in self.vars else -1
        coeffs: dict[int, Fraction] = {}
        for e, c in self.terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError(f"polynomial depends on variables other than {var}")
            coeffs[e[i] if i >= 0 else 0] = c
        n = max(coeffs, default=-1) + 1
        return UniPoly([coeffs.get(k, 0) for k in range(n)], var)

    def __str__(self):
        def mono(e):
            parts = []
            for v, k in zip(self.vars, e):
                if k == 1:
                    parts.append(v)
                elif k > 1:
                    parts.append(f"{v}^{k}")
            return "*".join(parts)

        return format_terms([(c, mono(e)) for e, c in self.sorted_terms()])

    def __repr__(self):
        return f"MultiPoly({self}; vars={','.join(self.vars)})"


class RationalFunction:
    """Quotient num/den of MultiPolys.  Only scalar normalisation is performed."""

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly | None = None):
        if den is None:
            den = MultiPoly.const(1, num.vars)
        num, den = num._align(den)
        if den.is_zero():
            raise ZeroDenominator("rational function with zero denominator")
        if num.is_zero():
            den = MultiPoly.const(1, num.vars)
        else:
            c = den.content()
            if den.leading_coefficient() < 0:
                c = -c
            if c != 1:
                num, den = num * (1 / c), den * (1 / c)
        self.num, self.den = num, den

    @property
    def vars(self) -> tuple[str, ...]:
        return self.num.vars

    @classmethod
    def const(cls, c, vars: Sequence[str]) -> "RationalFunction":
        return cls(MultiPoly.const(c, vars))

    @classmethod
    def gen(cls, name: str, vars: Sequence[str]) -> "RationalFunction":
        return cls(MultiPoly.gen(name, vars))

    def with_vars(self, vars: Sequence[str]) -> "RationalFunction":
        return RationalFunction(self.num.with_vars(vars), self.den.with_vars(vars))

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, MultiPoly):
            return RationalFunction(other)
        if isinstance(other, Scalar):
            return RationalFunction.const(other, self.vars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.num.is_zero():
            raise ZeroDenominator("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(self.num ** n, self.den ** n)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, RationalFunction) else other
        if other is NotImplemented:
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def structurally_equal(self, other: "RationalFunction") -> bool:
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        raise TypeError("RationalFunction is unhashable (equality is cross-multiplication)")

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunction({self})"


def as_rational_function(value, vars: Sequence[str]) -> RationalFunction:
    if isinstance(value, RationalFunction):
        return value
    if isinstance(value, MultiPoly):
        return RationalFunction(value)
    if isinstance(value, Scalar):
        return RationalFunction.const(value, vars)
    raise TypeError(f"cannot use {value!r} as a rational function")


def _power_table(base: MultiPoly, n: int, cache: dict) -> list[MultiPoly]:
    key = id(base)
    table = cache.get(key)
    if table is None:
        table = [MultiPoly.const(1, base.vars)]
        cache[key] = table
    while len(table) <= n:
        table.append(table[-1] * base)
    return table


def substitute(r, bindings: Mapping[str, object], out_vars: Sequence[str] | None = None):
    """Simultaneous substitution of rational functions for variables.

    Variables of ``r`` without a binding map to themselves.  Nested denominators
    are cleared by homogenising numerator and denominator separately in each
    substituted variable.  Raises SubstitutionError if the new denominator
    vanishes identically.
    """
    if isinstance(r, MultiPoly):
        r = RationalFunction(r)
    if out_vars is None:
        free = _free_vars(bindings)
        out = [v for v in r.vars if v not in bindings or v in free]
        for val in bindings.values():
            for v in getattr(val, "vars", ()):
                if v in free and v not in out:
                    out.append(v)
        out_vars = tuple(out)
    out_vars = tuple(out_vars)
    images: list[tuple[MultiPoly, MultiPoly]] = []
    for v in r.vars:
        if v in bindings:
            img = as_rational_function(bindings[v], out_vars).with_vars(out_vars)
        else:
            if v not in out_vars:
                if r.num.depends_on(v) or r.den.depends_on(v):
                    raise SubstitutionError(f"unbound variable {v} not in output variables")
                img = RationalFunction.const(0, out_vars)
            else:
                img = RationalFunction.gen(v, out_vars)
        images.append((img.num, img.den))

    cache: dict = {}
    deg_num = [r.num.degree(v) if not r.num.is_zero() else 0 for v in r.vars]
    deg_den = [r.den.degree(v) for v in r.vars]

    def hom(p: MultiPoly, degs: list[int]) -> MultiPoly:
        acc = MultiPoly(out_vars)
        for e, c in p.terms.items():
            t = MultiPoly.const(c, out_vars)
            for i, k in enumerate(e):
                n_i, d_i = images[i]
                if k:
                    t = t * _power_table(n_i, k, cache)[k]
                if degs[i] - k and not d_i.is_constant():
                    t = t * _power_table(d_i, degs[i] - k, cache)[degs[i] - k]
                elif degs[i] - k:
                    t = t * (d_i.constant_term() ** (degs[i] - k))
            acc = acc + t
        return acc

    num = hom(r.num, deg_num)
    den = hom(r.den, deg_den)
    # num/prod d_i^deg_num_i  divided by  den/prod d_i^deg_den_i
    for i, (_, d_i) in enumerate(images):
        diff = deg_den[i] - deg_num[i]
        if diff > 0:
            num = num * _pow_den(d_i, diff, cache)
        elif diff < 0:
            den = den * _pow_den(d_i, -diff, cache)
    if den.is_zero():
        raise SubstitutionError("denominator vanishes identically after substitution")
    return RationalFunction(num, den)


def _pow_den(d: MultiPoly, k: int, cache: dict) -> MultiPoly:
    return _power_table(d, k, cache)[k]


def _free_vars(bindings: Mapping[str, object]) -> set[str]:
    out: set[str] = set()
    for val in bindings.values():
        if isinstance(val, RationalFunction):
            out |= {v for v in val.vars if val.num.depends_on(v) or val.den.depends_on(v)}
        elif isinstance(val, MultiPoly):
            out |= {v for v in val.vars if val.depends_on(v)}
    return out


class CurvePoly:
    """Bivariate polynomial in (x, y) whose coefficients are polynomials in a parameter."""

    __slots__ = ("xvar", "yvar", "param", "coeffs")

    def __init__(self, xvar: str, yvar: str, param: str, coeffs: Mapping[tuple[int, int], UniPoly]):
        self.xvar, self.yvar, self.param = xvar, yvar, param
        self.coeffs = {k: v.with_var(param) for k, v in coeffs.items() if not v.is_zero()}

    @classmethod
    def from_multipoly(cls, poly: MultiPoly, curve_vars: tuple[str, str], param: str) -> "CurvePoly":
        xv, yv = curve_vars
        extra = [v for v in poly.vars if v not in (xv, yv, param) and poly.depends_on(v)]
        if extra:
            raise ValueError(f"curve depends on unexpected variables {extra}")
        vars = (xv, yv, param)
        p = poly.with_vars(vars)
        acc: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j, k), c in p.terms.items():
            acc.setdefault((i, j), {})[k] = c
        coeffs = {}
        for key, cs in acc.items():
            n = max(cs) + 1
            coeffs[key] = UniPoly([cs.get(k, 0) for k in range(n)], param)
        return cls(xv, yv, param, coeffs)

    def to_multipoly(self) -> MultiPoly:
        terms = {}
        for (i, j), p in self.coeffs.items():
            for k, c in enumerate(p.coeffs):
                if c:
                    terms[(i, j, k)] = c
        return MultiPoly((self.xvar, self.yvar, self.param), terms)

    def support(self) -> set[tuple[int, int]]:
        return set(self.coeffs)

    def degree(self, var: str) -> int:
        if not self.coeffs:
            return -1
        i = 0 if var == self.xvar else 1 if var == self.yvar else None
        if i is None:
            raise ValueError(f"{var} is not a curve variable")
        return max(k[i] for k in self.coeffs)

    def swap(self) -> "CurvePoly":
        return CurvePoly(self.yvar, self.xvar, self.param,
                         {(j, i): p for (i, j), p in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, CurvePoly):
            return NotImplemented
        return (self.xvar, self.yvar, self.param, self.coeffs) == (
            other.xvar, other.yvar, other.param, other.coeffs)

    def __str__(self):
        return str(self.to_multipoly())

    def __repr__(self):
        return f"CurvePoly({self})"
