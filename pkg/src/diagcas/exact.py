"""Exact rationals, dense univariate polynomials and reduced rational functions over Q.

Rationals are ``fractions.Fraction``.  ``UniPoly`` stores coefficients lowest degree
first with no trailing zeros.  ``UniRat`` is always kept in canonical form: reduced,
with a primitive integer denominator whose leading coefficient is positive, so that
equality of rational functions is structural equality.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import InexactDivision, ZeroDenominator

Scalar = (int, Fraction)


def to_rat(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip().replace("−", "-"))
    raise TypeError(f"cannot convert {value!r} to a rational")


def rat_str(q: Fraction) -> str:
    return str(q)


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _strip(coeffs: list) -> list:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _int_content(ints: Sequence[int]) -> int:
    g = 0
    for c in ints:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def _prim_ints(coeffs: Sequence[Fraction]) -> list[int]:
    """Integer primitive part with positive leading coefficient."""
    den = 1
    for c in coeffs:
        den = _lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = _int_content(ints)
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def _prem_ints(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer coefficient lists (lowest degree first)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        k = len(r) - 1 - db
        lr = r[-1]
        r = [c * lb for c in r]
        for i, c in enumerate(b):
            r[i + k] -= lr * c
        _strip(r)
        if r:
            g = _int_content(r)
            if g > 1:
                r = [c // g for c in r]
    return r


class UniPoly:
    """Dense polynomial in one variable with rational coefficients."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        self.coeffs: tuple[Fraction, ...] = tuple(_strip([to_rat(c) for c in coeffs]))
        self.var = var

    @classmethod
    def const(cls, c, var: str = "x") -> "UniPoly":
        return cls([c], var)

    @classmethod
    def gen(cls, var: str = "x") -> "UniPoly":
        return cls([0, 1], var)

    @classmethod
    def monomial(cls, c, k: int, var: str = "x") -> "UniPoly":
        return cls([0] * k + [c], var)

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def valuation(self) -> int:
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return -1

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            if other.var != self.var and other.degree() > 0 and self.degree() > 0:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if isinstance(other, Scalar):
            return UniPoly([other], self.var)
        return NotImplemented

    def _var_with(self, other: "UniPoly") -> str:
        return self.var if self.degree() > 0 or other.degree() <= 0 else other.var

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[k] + other[k] for k in range(n)], self._var_with(other))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

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
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly([], self._var_with(other))
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return UniPoly(out, self._var_with(other))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly([1], self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDenominator("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree()
        inv = 1 / other.lc()
        q = [Fraction(0)] * max(len(r) - db, 0)
        while len(r) - 1 >= db and r:
            k = len(r) - 1 - db
            f = r[-1] * inv
            q[k] = f
            for i, c in enumerate(other.coeffs):
                r[i + k] -= f * c
            _strip(r)
        var = self._var_with(other)
        return UniPoly(q, var), UniPoly(r, var)

    def exact_div(self, other) -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise InexactDivision(f"{other} does not divide {self}")
        return q

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __truediv__(self, other):
        if isinstance(other, Scalar):
            if not other:
                raise ZeroDenominator("division by zero")
            return self * (1 / Fraction(other))
        return self.exact_div(other)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.coeffs == UniPoly([other]).coeffs
        if not isinstance(other, UniPoly):
            return NotImplemented
        if self.coeffs != other.coeffs:
            return False
        return self.var == other.var or self.degree() <= 0

    def __hash__(self):
        return hash((self.coeffs, self.var if self.degree() > 0 else None))

    def __call__(self, value):
        """Horner evaluation; works for any ring element supporting + and *."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * value + c
        if acc is None:
            return Fraction(0)
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly([k * c for k, c in enumerate(self.coeffs)][1:], self.var)

    def content(self) -> Fraction:
        """Positive rational c with self/c an integer polynomial of content 1."""
        if not self.coeffs:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.coeffs:
            num = gcd(num, c.numerator)
            den = _lcm(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "UniPoly":
        """Integer polynomial of content 1 with positive leading coefficient."""
        if not self.coeffs:
            return self
        return UniPoly(_prim_ints(self.coeffs), self.var)

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        return self * (1 / self.lc())

    def compose(self, inner: "UniPoly") -> "UniPoly":
        return self(inner) if self.degree() > 0 else UniPoly(self.coeffs, inner.var)

    def with_var(self, var: str) -> "UniPoly":
        return UniPoly(self.coeffs, var)

    def to_json(self) -> list[str]:
        return [rat_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence, var: str = "x") -> "UniPoly":
        return cls([to_rat(c) for c in data], var)

    def __str__(self):
        return format_terms(
            [(c, f"{self.var}^{k}" if k > 1 else (self.var if k == 1 else ""))
             for k, c in reversed(list(enumerate(self.coeffs)))]
        )

    def __repr__(self):
        return f"UniPoly({self})"


def format_terms(terms: list[tuple[Fraction, str]]) -> str:
    """Render ``(coefficient, monomial)`` pairs as ``3/2*x^2 - y + 1``."""
    parts = []
    for c, mono in terms:
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        parts.append((sign, body))
    if not parts:
        return "0"
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd by primitive-part Euclid over Z; gcd(0, 0) = 0."""
    var = a._var_with(b) if isinstance(b, UniPoly) else a.var
    if a.is_zero() and b.is_zero():
        return UniPoly([], var)
    if a.is_zero():
        return b.monic().with_var(var)
    if b.is_zero():
        return a.monic().with_var(var)
    x, y = _prim_ints(a.coeffs), _prim_ints(b.coeffs)
    if len(x) < len(y):
        x, y = y, x
    while y:
        r = _prem_ints(x, y)
        x, y = y, (_prim_ints([Fraction(c) for c in r]) if r else [])
    return UniPoly(x, var).monic()


class UniRat:
    """Reduced rational function num/den in one variable (canonical form)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _canonical: bool = False):
        if not isinstance(num, UniPoly):
            num = UniPoly([num], den.var if isinstance(den, UniPoly) else "x")
        if den is None:
            den = UniPoly([1], num.var)
        elif not isinstance(den, UniPoly):
            den = UniPoly([den], num.var)
        if _canonical:
            self.num, self.den = num, den
            return
        n, d = _normalize(num, den)
        self.num, self.den = n, d

    @property
    def var(self) -> str:
        return self.num.var if self.num.degree() > 0 else self.den.var

    @classmethod
    def gen(cls, var: str = "x") -> "UniRat":
        return cls(UniPoly.gen(var))

    @classmethod
    def const(cls, c, var: str = "x") -> "UniRat":
        return cls(UniPoly([c], var))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _coerce(self, other):
        if isinstance(other, UniRat):
            return other
        if isinstance(other, UniPoly):
            return UniRat(other)
        if isinstance(other, Scalar):
            return UniRat(UniPoly([other], self.var))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return UniRat(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return UniRat(-self.num, self.den, _canonical=True)

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
        return UniRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "UniRat":
        if self.num.is_zero():
            raise ZeroDenominator("inverse of zero rational function")
        return UniRat(self.den, self.num)

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
        return UniRat(self.num ** n, self.den ** n, _canonical=True) if n else UniRat.const(1, self.var)

    def __eq__(self, other):
        if isinstance(other, (UniPoly,) + Scalar):
            other = self._coerce(other)
        if not isinstance(other, UniRat):
            return NotImplemented
        return unirat_equal(self, other)

    def __hash__(self):
        return hash((self.num.coeffs, self.den.coeffs))

    def __call__(self, value):
        d = self.den(value)
        if isinstance(d, Fraction) and not d:
            raise ZeroDenominator(f"pole of {self} at {value}")
        n = self.num(value)
        if isinstance(d, Scalar):
            return Fraction(n) / d if isinstance(n, Scalar) else n * (1 / Fraction(d))
        return n / d

    def compose(self, h: "UniRat") -> "UniRat":
        """self(h) computed by homogenising numerator and denominator."""
        h = self._coerce(h)
        deg = max(self.num.degree(), self.den.degree(), 0)
        hn, hd = h.num, h.den
        powers_n = [UniPoly([1], hn.var)]
        powers_d = [UniPoly([1], hn.var)]
        for _ in range(deg):
            powers_n.append(powers_n[-1] * hn)
            powers_d.append(powers_d[-1] * hd)

        def hom(p: UniPoly) -> UniPoly:
            acc = UniPoly([], hn.var)
            for k, c in enumerate(p.coeffs):
                if c:
                    acc = acc + powers_n[k] * powers_d[deg - k] * c
            return acc

        return UniRat(hom(self.num), hom(self.den))

    def derivative(self) -> "UniRat":
        return UniRat(self.num.derivative() * self.den - self.num * self.den.derivative(),
                      self.den * self.den)

    def value_at_zero(self) -> Fraction:
        if not self.den[0]:
            raise ZeroDenominator("pole at 0")
        return self.num[0] / self.den[0]

    def with_var(self, var: str) -> "UniRat":
        return UniRat(self.num.with_var(var), self.den.with_var(var), _canonical=True)

    def to_json(self) -> dict:
        return {"var": self.var, "num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "UniRat":
        var = data.get("var", "x")
        return cls(UniPoly.from_json(data["num"], var), UniPoly.from_json(data["den"], var))

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"UniRat({self})"


def _normalize(num: UniPoly, den: UniPoly) -> tuple[UniPoly, UniPoly]:
    if den.is_zero():
        raise ZeroDenominator("zero denominator")
    var = num._var_with(den)
    if num.is_zero():
        return UniPoly([], var), UniPoly([1], var)
    if den.degree() > 0 and num.degree() > 0:
        g = poly_gcd(num, den)
        if g.degree() > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
    # make den a primitive integer polynomial with positive leading coefficient
    scale = den.content()
    if den.lc() < 0:
        scale = -scale
    inv = 1 / scale
    return (num * inv).with_var(var), (den * inv).with_var(var)


def unirat_normalize(num: UniPoly, den: UniPoly) -> UniRat:
    return UniRat(num, den)


def unirat_equal(a: UniRat, b: UniRat) -> bool:
    """Structural comparison of canonical forms."""
    return a.num.coeffs == b.num.coeffs and a.den.coeffs == b.den.coeffs
