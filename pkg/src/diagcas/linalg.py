"""Exact nullspaces over Q, with modular arithmetic used only as a filter.

Facts used:
  * rank mod p <= rank over Q, so full column rank mod p proves a trivial rational
    nullspace;
  * rows independent mod p are independent over Q.
Large systems are solved modulo several primes and lifted by Chinese remaindering
and rational reconstruction; callers must verify the lifted vector exactly.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Iterator, Sequence

import numpy as np

# primes below 2^31 keep products of residues inside int64
_PRIME_START = (1 << 31) - 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes() -> Iterator[int]:
    n = _PRIME_START
    while True:
        if is_prime(n):
            yield n
        n -= 2 if n % 2 else 1


def integer_row(row: Sequence[Fraction]) -> list[int]:
    """Scale a rational row to coprime integers."""
    den = lcm(*[c.denominator for c in row]) if row else 1
    ints = [int(c * den) for c in row]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [c // g for c in ints] if g > 1 else ints


def rref_mod(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int], list[int]]:
    """Reduced row echelon form mod p.

    Returns the reduced matrix (only pivot rows), the pivot columns, and the indices
    of original rows that were used as pivots (independent mod p).
    """
    m = np.array(m, dtype=np.int64) % p
    nrows, ncols = m.shape
    order = list(range(nrows))
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
            order[r], order[i] = order[i], order[r]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if len(rows):
            m[rows] = (m[rows] - (col[rows, None] * m[r][None, :]) % p) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots, order[:r]


def nullity_mod(m: np.ndarray, p: int) -> int:
    _, pivots, _ = rref_mod(m, p)
    return m.shape[1] - len(pivots)


def nullspace_exact(rows: Sequence[Sequence[int]], ncols: int) -> list[list[Fraction]]:
    """Basis of the rational nullspace of an integer matrix (Bareiss, then back substitution)."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    prev = 1
    r = 0
    for col in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        b = pr[col]
        for i in range(r + 1, len(m)):
            mi = m[i]
            a = mi[col]
            m[i] = [(b * mi[j] - a * pr[j]) // prev for j in range(ncols)]
        prev = b
        pivots.append(col)
        r += 1
    m = m[:r]
    pivset = set(pivots)
    basis = []
    for f in (c for c in range(ncols) if c not in pivset):
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i in range(r - 1, -1, -1):
            col = pivots[i]
            s = sum((m[i][j] * v[j] for j in range(col + 1, ncols) if v[j]), Fraction(0))
            v[col] = -s / m[i][col]
        basis.append(v)
    return basis


def rational_reconstruction(a: int, m: int) -> Fraction | None:
    """n/d = a mod m with |n|, d <= sqrt(m/2), or None."""
    a %= m
    bound = isqrt(m // 2)
    r0, r1 = m, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def nullvector_mod(m: np.ndarray, p: int) -> tuple[list[int], int] | None:
    """A nullspace vector mod p with its last free coordinate set to 1.

    Returns (vector, free column) or None if the nullspace mod p is trivial.
    """
    red, pivots, _ = rref_mod(m, p)
    ncols = m.shape[1]
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    if not free:
        return None
    f = free[0]
    v = [0] * ncols
    v[f] = 1
    for i, c in enumerate(pivots):
        v[c] = int(-red[i, f]) % p
    return v, f


def lift_nullvector(build_mod, ncols: int, verify, max_primes: int = 400) -> list[Fraction] | None:
    """Chinese-remainder lift of the normalised mod-p nullvector until ``verify`` accepts it.

    ``build_mod(p)`` returns the system mod p as an int64 array, or None if p is
    unsuitable (a denominator vanishes mod p).  ``verify(vector)`` checks a rational
    candidate exactly.
    """
    residues: list[int] | None = None
    modulus = 1
    free_col = None
    last = None
    used = 0
    for p in primes():
        if used >= max_primes:
            return None
        m = build_mod(p)
        if m is None:
            continue
        got = nullvector_mod(m, p)
        if got is None:
            return None
        v, f = got
        if free_col is None:
            free_col = f
        elif f != free_col:
            # unlucky prime with a different pivot structure
            continue
        used += 1
        if residues is None:
            residues = v
            modulus = p
        else:
            inv = pow(modulus % p, p - 2, p)
            residues = [r + modulus * (((vi - r) % p) * inv % p) for r, vi in zip(residues, v)]
            modulus *= p
        cand = []
        for r in residues:
            q = rational_reconstruction(r, modulus)
            if q is None:
                cand = None
                break
            cand.append(q)
        if cand is None:
            continue
        if cand == last and verify(cand):
            return cand
        last = cand
    return None
