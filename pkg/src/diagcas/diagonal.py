"""Diagonals of multivariate rational functions and monomial changes of variables."""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import InvalidMonomialMap, NotExpandable, TooExpensive
from .multipoly import MultiPoly, RationalFunction, substitute
from .series import PowerSeries

MAX_TOTAL_DEGREE = 60


def _as_int(c: Fraction):
    return c.numerator if c.denominator == 1 else c


def diagonal(r: RationalFunction, order: int, *, force: bool = False, var: str = "x") -> PowerSeries:
    """Coefficients a_{m,...,m}, m = 0..order, of the multi-Taylor expansion of ``r`` at 0.

    The expansion T = num/den is built in increasing total degree from
    T_e = (num_e - sum_{f != 0} den_f * T_{e-f}) / den_0.  Only exponents with
    every entry <= order are kept, since larger ones never reach a diagonal term.
    """
    if isinstance(r, MultiPoly):
        r = RationalFunction(r)
    k = len(r.vars)
    if k == 0:
        raise ValueError("no variables")
    den0 = r.den.constant_term()
    if not den0:
        raise NotExpandable("denominator vanishes at the origin")
    if k >= 4 and k * order > MAX_TOTAL_DEGREE and not force:
        raise TooExpensive(f"total degree {k * order} exceeds {MAX_TOTAL_DEGREE} for {k} variables; "
                           "pass force=True to override")
    zero = (0,) * k
    den_terms = [(f, _as_int(c)) for f, c in r.den.terms.items() if f != zero]
    num = {e: _as_int(c) for e, c in r.num.terms.items() if max(e) <= order}
    inv = _as_int(1 / den0)
    exact_unit = den0 in (1, -1)

    boxes = sorted(product(range(order + 1), repeat=k), key=sum)
    t: dict[tuple[int, ...], object] = {}
    for e in boxes:
        acc = num.get(e, 0)
        for f, c in den_terms:
            g = tuple(a - b for a, b in zip(e, f))
            if min(g) >= 0:
                v = t.get(g)
                if v:
                    acc -= c * v
        if acc:
            acc = acc * inv if exact_unit else Fraction(acc) * inv
            t[e] = acc
    return PowerSeries([t.get((m,) * k, 0) for m in range(order + 1)], var)


def _det(m: list[list[int]]) -> Fraction:
    a = [[Fraction(v) for v in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                for j in range(c, n):
                    a[i][j] -= f * a[c][j]
    return det


class MonomialMap:
    """Monomial change of variables x_j -> prod_i x_i^{matrix[i][j]}.

    Column j of the matrix is the exponent vector of the image of variable j.
    Requirements: nonzero determinant, every variable has the same total exponent
    n >= 1 across the images (so the product of the images is (x1...xk)^n), and no
    image is itself a power of the product.
    """

    def __init__(self, matrix: Sequence[Sequence[int]]):
        self.matrix = [list(map(int, row)) for row in matrix]
        problems = self.violations()
        if problems:
            raise InvalidMonomialMap("; ".join(problems))
        self.n = sum(self.matrix[0])

    @classmethod
    def from_images(cls, images: Sequence[Sequence[int]]) -> "MonomialMap":
        """Build from the exponent vectors of the images, one per variable."""
        k = len(images)
        return cls([[images[j][i] for j in range(k)] for i in range(k)])

    @property
    def size(self) -> int:
        return len(self.matrix)

    def images(self) -> list[tuple[int, ...]]:
        k = self.size
        return [tuple(self.matrix[i][j] for i in range(k)) for j in range(k)]

    def violations(self) -> list[str]:
        m = self.matrix
        k = len(m)
        out = []
        if any(len(row) != k for row in m):
            return ["matrix is not square"]
        if any(v < 0 for row in m for v in row):
            out.append("negative exponent")
        if _det(m) == 0:
            out.append("determinant is zero")
        sums = [sum(row) for row in m]
        if len(set(sums)) != 1 or sums[0] < 1:
            out.append(f"total exponents per variable {sums} are not all equal to some n >= 1")
        for j in range(k):
            col = [m[i][j] for i in range(k)]
            if k > 1 and len(set(col)) == 1:
                out.append(f"image of variable {j} is a power of the product")
        return out


def monomial_transform(r: RationalFunction, m: MonomialMap) -> RationalFunction:
    if isinstance(r, MultiPoly):
        r = RationalFunction(r)
    if m.size != len(r.vars):
        raise InvalidMonomialMap(f"map of size {m.size} for {len(r.vars)} variables")
    bindings = {}
    for v, img in zip(r.vars, m.images()):
        bindings[v] = MultiPoly(r.vars, {img: 1})
    return substitute(r, bindings, r.vars)


def power_substitution(r: RationalFunction, n: int) -> RationalFunction:
    """(x1, ..., xk) -> (x1^n, ..., xk^n)."""
    if n < 1:
        raise ValueError("power must be at least 1")
    if isinstance(r, MultiPoly):
        r = RationalFunction(r)

    def lift(p: MultiPoly) -> MultiPoly:
        return MultiPoly(p.vars, {tuple(n * a for a in e): c for e, c in p.terms.items()})

    return RationalFunction(lift(r.num), lift(r.den))
