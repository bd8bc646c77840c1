"""Linear differential operators with polynomial coefficients and series-based guessing."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Mapping, Sequence

from .errors import InsufficientTerms, SeriesTooShort, WrongOrder
from .exact import UniPoly, UniRat, rat_str, to_rat
import numpy as np

from .linalg import lift_nullvector, nullity_mod, primes
from .series import PowerSeries

GUESS_MARGIN = 10


class DiffOp:
    """sum_i coeffs[i](x) * D^i with D = d/dx."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Sequence, var: str = "x"):
        polys = []
        for c in coeffs:
            if isinstance(c, UniPoly):
                polys.append(c.with_var(var))
            elif isinstance(c, (int, Fraction)):
                polys.append(UniPoly([c], var))
            else:
                polys.append(UniPoly(c, var))
        while polys and polys[-1].is_zero():
            polys.pop()
        self.coeffs: tuple[UniPoly, ...] = tuple(polys)
        self.var = var

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def degree(self) -> int:
        return max((c.degree() for c in self.coeffs), default=-1)

    def is_zero(self) -> bool:
        return not self.coeffs

    def canonical(self) -> "DiffOp":
        """Integer coefficients with content 1 and positive leading coefficient of c_r."""
        if not self.coeffs:
            return self
        den = 1
        for c in self.coeffs:
            for a in c.coeffs:
                den = lcm(den, a.denominator)
        num = 0
        for c in self.coeffs:
            for a in c.coeffs:
                num = gcd(num, int(a * den))
        scale = Fraction(den, num)
        if self.coeffs[-1].lc() < 0:
            scale = -scale
        return DiffOp([c * scale for c in self.coeffs], self.var)

    def primitive(self) -> "DiffOp":
        """Divide out the polynomial gcd of all coefficients, then canonicalise."""
        from .exact import poly_gcd
        g = UniPoly([], self.var)
        for c in self.coeffs:
            g = poly_gcd(g, c)
        if g.degree() <= 0:
            return self.canonical()
        return DiffOp([c.exact_div(g) for c in self.coeffs], self.var).canonical()

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.var == other.var and [c.coeffs for c in self.coeffs] == [c.coeffs for c in other.coeffs]

    def __hash__(self):
        return hash(tuple(c.coeffs for c in self.coeffs))

    def __add__(self, other: "DiffOp") -> "DiffOp":
        n = max(len(self.coeffs), len(other.coeffs))
        zero = UniPoly([], self.var)
        get = lambda op, i: op.coeffs[i] if i < len(op.coeffs) else zero
        return DiffOp([get(self, i) + get(other, i) for i in range(n)], self.var)

    def scale(self, c) -> "DiffOp":
        return DiffOp([p * to_rat(c) if not isinstance(c, UniPoly) else p * c for p in self.coeffs], self.var)

    def apply(self, s: PowerSeries) -> PowerSeries:
        return apply(self, s)

    def to_json(self) -> dict:
        return {"var": self.var, "coeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: Mapping) -> "DiffOp":
        var = data.get("var", "x")
        return cls([UniPoly.from_json(c, var) for c in data["coeffs"]], var)

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            d = "" if i == 0 else ("*D" if i == 1 else f"*D^{i}")
            parts.append(f"({c}){d}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"DiffOp({self})"


def apply(op: DiffOp, s: PowerSeries) -> PowerSeries:
    """sum c_i(x) s^(i), truncated at order(s) - order(op)."""
    r = max(op.order, 0)
    n = s.order - r
    if n < 0:
        raise SeriesTooShort(f"series of order {s.order} is too short for an order-{r} operator")
    out = [Fraction(0)] * (n + 1)
    deriv = s
    for i, c in enumerate(op.coeffs):
        if i:
            deriv = deriv.derivative()
        d = deriv.coeffs
        for j, a in enumerate(c.coeffs):
            if a:
                for k in range(j, n + 1):
                    out[k] += a * d[k - j]
    return PowerSeries(out, s.var)


def annihilates(op: DiffOp, s: PowerSeries) -> bool:
    if s.order <= op.order + 5:
        raise SeriesTooShort(f"need order > {op.order + 5}, got {s.order}")
    return apply(op, s).is_zero()


def _falling(m: int, i: int) -> int:
    out = 1
    for t in range(i):
        out *= m - t
    return out


class _GuessSystem:
    """Linear system for c_0..c_r of degree <= d with c_i(x) s^(i) = 0 mod x^(n_eq).

    Column i*(d+1)+j holds the unknown coefficient of x^j in c_i; row n is the
    coefficient of x^n, which is sum_{i,j} coef * t_i[n-j] with t_i the
    coefficients of the i-th derivative.
    """

    def __init__(self, s: PowerSeries, max_order: int):
        self.s = s
        c = s.coeffs
        self.t = [[c[m + i] * _falling(m + i, i) for m in range(s.order - i + 1)]
                  for i in range(max_order + 1)]
        self._mod: dict[int, list[np.ndarray] | None] = {}

    def n_eq(self, r: int) -> int:
        return self.s.order - r + 1

    def _residues(self, p: int):
        if p not in self._mod:
            out = []
            for row in self.t:
                vals = []
                for a in row:
                    den = a.denominator % p
                    if den == 0:
                        self._mod[p] = None
                        return None
                    vals.append(a.numerator % p * pow(den, p - 2, p) % p)
                out.append(np.array(vals, dtype=np.int64))
            self._mod[p] = out
        return self._mod[p]

    def matrix_mod(self, r: int, d: int, p: int) -> np.ndarray | None:
        res = self._residues(p)
        if res is None:
            return None
        n = self.n_eq(r)
        m = np.zeros((n, (r + 1) * (d + 1)), dtype=np.int64)
        for i in range(r + 1):
            for j in range(min(d + 1, n)):
                m[j:, i * (d + 1) + j] = res[i][:n - j]
        return m

    def nullity(self, r: int, d: int) -> int:
        """Nullity modulo a prime; zero proves there is no rational solution."""
        for p in primes():
            m = self.matrix_mod(r, d, p)
            if m is not None:
                return nullity_mod(m, p)
        raise AssertionError("unreachable")

    def operator(self, v, r: int, d: int) -> DiffOp:
        return DiffOp([UniPoly(v[i * (d + 1):(i + 1) * (d + 1)], self.s.var) for i in range(r + 1)],
                      self.s.var)

    def solve(self, r: int, d: int) -> DiffOp | None:
        found: list[DiffOp] = []

        def verify(v) -> bool:
            op = self.operator(v, r, d)
            if op.order != r:
                return False
            op = op.canonical()
            if apply(op, self.s).is_zero():
                found.append(op)
                return True
            return False

        lift_nullvector(lambda p: self.matrix_mod(r, d, p), (r + 1) * (d + 1), verify)
        return found[0] if found else None


def guess_ode(s: PowerSeries, max_order: int, max_degree: int, margin: int = GUESS_MARGIN) -> DiffOp | None:
    """Least order, then least degree, operator annihilating ``s`` within the bounds.

    Unknowns are the coefficients of c_0..c_r of degree <= d; each vanishing
    coefficient of the applied series is one linear equation over Q.  Orders whose
    system has full rank modulo a prime at the largest degree are skipped (a proof
    that no rational solution exists); otherwise the least degree is found by
    bisection, since solutions at degree d persist at degree d + 1.  The solution is
    lifted from several primes and accepted only after exact verification.
    """
    need = (max_order + 1) * (max_degree + 1) + max_order + margin
    if s.order < need:
        raise InsufficientTerms(f"need series order >= {need}, got {s.order}")
    system = _GuessSystem(s, max_order)
    for r in range(0, max_order + 1):
        if system.nullity(r, max_degree) == 0:
            continue
        lo, hi = 0, max_degree
        while lo < hi:
            mid = (lo + hi) // 2
            if system.nullity(r, mid):
                hi = mid
            else:
                lo = mid + 1
        for d in range(lo, max_degree + 1):
            op = system.solve(r, d)
            if op is not None:
                return op
    return None


def symmetric_square(op: DiffOp) -> DiffOp:
    """Order-3 operator annihilating products of solutions of an order-2 operator."""
    if op.order != 2:
        raise WrongOrder(f"symmetric square needs order 2, got {op.order}")
    c0, c1, c2 = (UniRat(c) for c in op.coeffs)
    p = c1 / c2
    q = c0 / c2
    terms = [4 * p * q + 2 * q.derivative(),
             2 * p * p + p.derivative() + 4 * q,
             3 * p,
             UniRat.const(1, op.var)]
    den = UniPoly([1], op.var)
    for t in terms:
        den = den * t.den.exact_div(_gcd_poly(den, t.den)) if t.den.degree() > 0 else den
    coeffs = [(t * UniRat(den)) for t in terms]
    return DiffOp([t.num * (1 / t.den.lc()) for t in coeffs], op.var).canonical()


def _gcd_poly(a: UniPoly, b: UniPoly) -> UniPoly:
    from .exact import poly_gcd
    return poly_gcd(a, b)


# theta = x*D forms, stored as {k: P_k(theta)} meaning sum_k x^k P_k(theta)


def _stirling2(n: int) -> list[list[int]]:
    s = [[0] * (n + 1) for _ in range(n + 1)]
    s[0][0] = 1
    for i in range(1, n + 1):
        for j in range(1, i + 1):
            s[i][j] = j * s[i - 1][j] + s[i - 1][j - 1]
    return s


def theta_to_d(theta: Mapping[int, UniPoly], var: str = "x") -> DiffOp:
    """sum_k x^k P_k(theta) in D-form, using theta^i = sum_j S(i,j) x^j D^j."""
    top = max((p.degree() for p in theta.values()), default=0)
    st = _stirling2(max(top, 0))
    acc: dict[int, dict[int, Fraction]] = {}
    for k, p in theta.items():
        for i, a in enumerate(p.coeffs):
            for j in range(i + 1):
                if a and st[i][j]:
                    e = k + j
                    if e < 0:
                        raise ValueError("theta form has a negative power of x after conversion")
                    acc.setdefault(j, {})
                    acc[j][e] = acc[j].get(e, 0) + a * st[i][j]
    order = max(acc, default=-1)
    coeffs = []
    for j in range(order + 1):
        terms = acc.get(j, {})
        n = max(terms, default=-1) + 1
        coeffs.append(UniPoly([terms.get(e, 0) for e in range(n)], var))
    return DiffOp(coeffs, var)


def d_to_theta(op: DiffOp, theta_var: str = "t") -> dict[int, UniPoly]:
    """Inverse of theta_to_d, using x^j D^j = theta (theta - 1) ... (theta - j + 1)."""
    out: dict[int, UniPoly] = {}
    th = UniPoly.gen(theta_var)
    falling = [UniPoly([1], theta_var)]
    for j in range(1, op.order + 1):
        falling.append(falling[-1] * (th - (j - 1)))
    for j, c in enumerate(op.coeffs):
        for l, a in enumerate(c.coeffs):
            if a:
                k = l - j
                out[k] = out.get(k, UniPoly([], theta_var)) + falling[j] * a
    return {k: p for k, p in out.items() if not p.is_zero()}
