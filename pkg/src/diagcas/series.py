"""Dense truncated power series over Q.

A ``PowerSeries`` of order N stores the N+1 coefficients of x^0..x^N.  Binary
operations truncate to the smaller order.  ``log``, ``exp`` and rational powers use
the usual first-order recurrences, so every coefficient is exact.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence, Union

from .errors import (IrrationalConstant, InvalidParameter, NonzeroConstantPullback,
                     NotInvertible, SeriesError, ZeroDenominator)
from .exact import Scalar, UniPoly, UniRat, rat_str, to_rat


class PowerSeries:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable, var: str = "x"):
        self.coeffs: tuple[Fraction, ...] = tuple(to_rat(c) for c in coeffs)
        if not self.coeffs:
            raise SeriesError("a power series needs at least one coefficient")
        self.var = var

    @classmethod
    def _raw(cls, coeffs: list, var: str) -> "PowerSeries":
        obj = cls.__new__(cls)
        obj.coeffs = tuple(coeffs)
        obj.var = var
        return obj

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, order: int, var: str = "x") -> "PowerSeries":
        return cls._raw([Fraction(0)] * (order + 1), var)

    @classmethod
    def one(cls, order: int, var: str = "x") -> "PowerSeries":
        return cls._raw([Fraction(1)] + [Fraction(0)] * order, var)

    @classmethod
    def gen(cls, order: int, var: str = "x") -> "PowerSeries":
        s = [Fraction(0)] * (order + 1)
        if order >= 1:
            s[1] = Fraction(1)
        return cls._raw(s, var)

    @classmethod
    def from_poly(cls, p: UniPoly, order: int) -> "PowerSeries":
        return cls._raw([p[k] for k in range(order + 1)], p.var)

    @classmethod
    def from_rat(cls, r: UniRat, order: int) -> "PowerSeries":
        if not r.den[0]:
            raise NotInvertible(f"{r} has a pole at 0")
        return cls.from_poly(r.num, order) * cls.from_poly(r.den, order).invert()

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def valuation(self) -> int | None:
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise SeriesError(f"cannot extend a series of order {self.order} to {order}")
        return PowerSeries._raw(self.coeffs[:order + 1], self.var)

    def _coerce(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return other
        if isinstance(other, Scalar):
            s = [Fraction(0)] * (self.order + 1)
            s[0] = to_rat(other)
            return PowerSeries._raw(s, self.var)
        if isinstance(other, UniPoly):
            return PowerSeries.from_poly(other, self.order)
        if isinstance(other, UniRat):
            return PowerSeries.from_rat(other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order) + 1
        return PowerSeries._raw([a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])], self.var)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries._raw([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "PowerSeries":
        c = to_rat(c)
        return PowerSeries._raw([a * c for a in self.coeffs], self.var)

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order) + 1
        a, b = self.coeffs, other.coeffs
        out = []
        # skip leading zeros of either factor
        va = next((i for i in range(n) if a[i]), n)
        vb = next((i for i in range(n) if b[i]), n)
        for k in range(n):
            acc = Fraction(0)
            for i in range(va, k - vb + 1):
                ai = a[i]
                if ai:
                    acc += ai * b[k - i]
            out.append(Fraction(acc))
        return PowerSeries._raw(out, self.var)

    __rmul__ = __mul__

    def invert(self) -> "PowerSeries":
        a = self.coeffs
        if not a[0]:
            raise NotInvertible("series with zero constant term is not invertible")
        inv0 = 1 / a[0]
        out = [inv0]
        for k in range(1, len(a)):
            acc = Fraction(0)
            for i in range(1, k + 1):
                if a[i]:
                    acc += a[i] * out[k - i]
            out.append(-acc * inv0)
        return PowerSeries._raw(out, self.var)

    def __truediv__(self, other):
        if isinstance(other, Scalar):
            if not other:
                raise ZeroDenominator("series divided by zero")
            return self.scale(1 / to_rat(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.invert()

    def __rtruediv__(self, other):
        return self.invert() * other

    def __pow__(self, q):
        return series_pow(self, q)

    def derivative(self) -> "PowerSeries":
        """Derivative; the order drops by one (order 0 gives the zero series of order 0)."""
        if self.order == 0:
            return PowerSeries.zero(0, self.var)
        return PowerSeries._raw([k * c for k, c in enumerate(self.coeffs)][1:], self.var)

    def integral(self) -> "PowerSeries":
        """Antiderivative with zero constant term; the order grows by one."""
        return PowerSeries._raw([Fraction(0)] + [c / (k + 1) for k, c in enumerate(self.coeffs)],
                                self.var)

    def mul_x(self, k: int = 1) -> "PowerSeries":
        """Multiply by x^k keeping the order (top coefficients drop off)."""
        return PowerSeries._raw(([Fraction(0)] * k + list(self.coeffs))[:self.order + 1], self.var)

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def agrees(self, other: "PowerSeries", order: int | None = None) -> bool:
        n = min(self.order, other.order) if order is None else order
        return self.coeffs[:n + 1] == other.coeffs[:n + 1]

    def first_mismatch(self, other: "PowerSeries") -> int | None:
        n = min(self.order, other.order)
        for k in range(n + 1):
            if self.coeffs[k] != other.coeffs[k]:
                return k
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_json(self) -> dict:
        return {"var": self.var, "order": self.order, "coeffs": [rat_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "PowerSeries":
        coeffs = [to_rat(c) for c in data["coeffs"]]
        order = data.get("order", len(coeffs) - 1)
        if order != len(coeffs) - 1:
            raise SeriesError(f"order {order} does not match {len(coeffs)} coefficients")
        return cls(coeffs, data.get("var", "x"))

    def __str__(self):
        body = ""
        for k, c in enumerate(self.coeffs):
            if c:
                mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
                a = abs(c)
                term = f"{a}*{mono}" if mono and a != 1 else (mono or str(a))
                if body:
                    body += (" - " if c < 0 else " + ") + term
                else:
                    body = ("-" if c < 0 else "") + term
        return f"{body or '0'} + O({self.var}^{self.order + 1})"

    def __repr__(self):
        return f"PowerSeries({self})"


# module-level operations


def series_add(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    return a + b


def series_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    return a * b


def series_invert(a: PowerSeries) -> PowerSeries:
    return a.invert()


def series_derivative(a: PowerSeries) -> PowerSeries:
    return a.derivative()


def series_log(s: PowerSeries) -> PowerSeries:
    if s[0] != 1:
        raise SeriesError("log requires constant term 1")
    a = s.coeffs
    out = [Fraction(0)]
    for n in range(1, len(a)):
        acc = n * a[n]
        for k in range(1, n):
            if out[k] and a[n - k]:
                acc -= k * out[k] * a[n - k]
        out.append(acc / n)
    return PowerSeries._raw(out, s.var)


def series_exp(s: PowerSeries) -> PowerSeries:
    if s[0]:
        raise SeriesError("exp requires constant term 0")
    a = s.coeffs
    out = [Fraction(1)]
    for n in range(1, len(a)):
        acc = Fraction(0)
        for k in range(1, n + 1):
            if a[k]:
                acc += k * a[k] * out[n - k]
        out.append(acc / n)
    return PowerSeries._raw(out, s.var)


def series_pow(s: PowerSeries, q) -> PowerSeries:
    """s^q.  Integer q needs an invertible constant only for q < 0; otherwise s(0) = 1."""
    q = to_rat(q)
    if q.denominator == 1:
        n = q.numerator
        if n < 0:
            return series_pow(s.invert(), -n)
        result = PowerSeries.one(s.order, s.var)
        base = s
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result
    if s[0] != 1:
        raise SeriesError("rational power requires constant term 1")
    a = s.coeffs
    out = [Fraction(1)]
    for n in range(1, len(a)):
        acc = Fraction(0)
        for k in range(1, n + 1):
            if a[k]:
                acc += ((q + 1) * k - n) * a[k] * out[n - k]
        out.append(acc / n)
    return PowerSeries._raw(out, s.var)


def compose_series(s: PowerSeries, h: PowerSeries) -> PowerSeries:
    """s(h(x)) for a series h with h(0) = 0, truncated at the order of s."""
    if h[0]:
        raise NonzeroConstantPullback(f"pullback has nonzero constant term {h[0]}")
    n = s.order
    if h.order < n:
        raise SeriesError("pullback series is shorter than the outer series")
    h = h.truncate(n)
    v = h.valuation()
    if v is None:
        return PowerSeries([s[0]] + [0] * n, h.var)
    top = n // v
    acc = PowerSeries([s[top]] + [0] * n, h.var)
    for k in range(top - 1, -1, -1):
        acc = acc * h
        acc = PowerSeries._raw((acc.coeffs[0] + s[k],) + acc.coeffs[1:], h.var)
    return acc


def compose_ratfunc(s: PowerSeries, h: UniRat) -> PowerSeries:
    """s(h(x)) for a rational h with h(0) = 0."""
    if isinstance(h, UniPoly):
        h = UniRat(h)
    if not h.den[0]:
        raise NonzeroConstantPullback(f"pullback {h} has a pole at 0 and is not expandable")
    if h.num[0]:
        raise NonzeroConstantPullback(f"pullback {h} has h(0) = {h.value_at_zero()} != 0")
    hs = PowerSeries.from_rat(h, s.order)
    return compose_series(PowerSeries._raw(s.coeffs, hs.var), hs)


def hypergeom_series(upper: Sequence, lower: Sequence, order: int, var: str = "x") -> PowerSeries:
    """Truncated generalised hypergeometric series pFq(upper; lower; x)."""
    upper = [to_rat(a) for a in upper]
    lower = [to_rat(b) for b in lower]
    for b in lower:
        if b.denominator == 1 and b <= 0:
            raise InvalidParameter(f"lower parameter {b} is a nonpositive integer")
    out = [Fraction(1)]
    c = Fraction(1)
    for n in range(order):
        num = Fraction(1)
        for a in upper:
            num *= a + n
        den = Fraction(n + 1)
        for b in lower:
            den *= b + n
        c = c * num / den
        out.append(c)
    return PowerSeries._raw(out, var)


def integer_nthroot(n: int, k: int) -> int | None:
    """Exact integer k-th root of n >= 0, or None if n is not a perfect power."""
    if n < 2:
        return n
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x if x ** k == n else None


def rational_power(pairs: Sequence[tuple[Fraction, Fraction]]) -> Fraction:
    """Exact value of prod c_i^e_i (real branch); IrrationalConstant if not rational."""
    pairs = [(to_rat(c), to_rat(e)) for c, e in pairs]
    if not pairs:
        return Fraction(1)
    big = lcm(*[e.denominator for _, e in pairs])
    sign = 1
    radicand = Fraction(1)
    for c, e in pairs:
        if not c:
            raise IrrationalConstant("zero base in a prefactor")
        if c < 0:
            if e.denominator % 2 == 0:
                raise IrrationalConstant(f"({c})^({e}) is not real")
            if e.numerator % 2:
                sign = -sign
            c = -c
        radicand *= c ** int(e * big)
    num = integer_nthroot(radicand.numerator, big)
    den = integer_nthroot(radicand.denominator, big)
    if num is None or den is None:
        raise IrrationalConstant(f"constant {radicand}^(1/{big}) is irrational")
    return sign * Fraction(num, den)


Base = Union[UniRat, UniPoly, PowerSeries]


class AlgebraicPrefactor:
    """Product of base_i(x)^e_i with a rational aggregate constant.

    A base is a UniRat (or UniPoly) or an already expanded PowerSeries, the latter
    for algebraic sub-expressions such as sqrt(1 - x).
    """

    def __init__(self, factors: Iterable[tuple[Base, object]] = ()):
        self.factors: list[tuple[Base, Fraction]] = []
        for base, e in factors:
            if isinstance(base, UniPoly):
                base = UniRat(base)
            self.factors.append((base, to_rat(e)))
        for base, _ in self.factors:
            if _base_constant(base) == 0:
                raise SeriesError(f"prefactor base {base} vanishes at 0")

    def constant(self) -> Fraction:
        return rational_power([(_base_constant(b), e) for b, e in self.factors])

    def series(self, order: int, var: str = "x") -> PowerSeries:
        c = self.constant()
        total = PowerSeries.zero(order, var)
        for base, e in self.factors:
            bs = base if isinstance(base, PowerSeries) else PowerSeries.from_rat(base, order)
            bs = bs.truncate(order)
            bs = PowerSeries._raw(bs.coeffs, var)
            total = total + series_log(bs.scale(1 / bs[0])).scale(e)
        return series_exp(total).scale(c)


def _base_constant(base: Base) -> Fraction:
    if isinstance(base, PowerSeries):
        return base[0]
    return base.value_at_zero()


def prefactor_series(a: AlgebraicPrefactor, order: int, var: str = "x") -> PowerSeries:
    return a.series(order, var)


def pullbacked_solution(a: AlgebraicPrefactor | None, params: tuple[Sequence, Sequence],
                        h: UniRat | PowerSeries, order: int, var: str = "x") -> PowerSeries:
    """A(x) * pFq(upper; lower; h(x)) truncated at ``order``."""
    upper, lower = params
    f = hypergeom_series(upper, lower, order, var)
    if isinstance(h, PowerSeries):
        g = compose_series(f, PowerSeries._raw(h.truncate(order).coeffs, var))
    else:
        g = compose_ratfunc(f, h)
    g = PowerSeries._raw(g.coeffs, var)
    if a is None or not a.factors:
        return g
    return a.series(order, var) * g
