from fractions import Fraction
from itertools import islice

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from diagcas.linalg import (integer_row, is_prime, lift_nullvector, nullity_mod, nullspace_exact,
                            primes, rational_reconstruction, rref_mod)

from helpers import small_ints

P31 = (1 << 31) - 1


@given(st.integers(-10, 10 ** 7))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


@pytest.mark.parametrize("n, want", [(P31, True), (561, False), (3215031751, False), (2, True), (1, False)])
def test_is_prime_known_values(n, want):
    assert is_prime(n) is want


def test_primes_descend_from_the_mersenne_prime():
    ps = list(islice(primes(), 5))
    assert ps[0] == P31
    assert ps == sorted(ps, reverse=True)
    assert all(sympy.isprime(p) for p in ps)
    assert ps[1] == sympy.prevprime(P31)


@given(st.integers(-3000, 3000), st.integers(1, 3000))
def test_rational_reconstruction_round_trip(n, d):
    q = Fraction(n, d)
    residue = q.numerator * pow(q.denominator, -1, P31) % P31
    assert rational_reconstruction(residue, P31) == q


def test_rational_reconstruction_fails_beyond_the_bound():
    m = 101
    # 7/11 needs |n|, d <= 7 = isqrt(50)
    residue = 7 * pow(11, -1, m) % m
    assert rational_reconstruction(residue, m) != Fraction(7, 11)


def test_integer_row():
    assert integer_row([Fraction(1, 2), Fraction(-1, 3), Fraction(0)]) == [3, -2, 0]
    assert integer_row([Fraction(4), Fraction(6)]) == [2, 3]


matrices = st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=1, max_size=5))


@given(matrices)
def test_nullspace_matches_sympy(rows):
    ncols = len(rows[0])
    basis = nullspace_exact(rows, ncols)
    oracle = sympy.Matrix(rows).nullspace()
    assert len(basis) == len(oracle)
    for v in basis:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)
    if basis:
        assert sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in v] for v in basis]).rank() == len(basis)


@given(matrices)
def test_rank_mod_p_never_exceeds_rank_over_q(rows):
    ncols = len(rows[0])
    for p in (3, 7, P31):
        assert nullity_mod(np.array(rows), p) >= len(nullspace_exact(rows, ncols))
    assert nullity_mod(np.array(rows), P31) == len(nullspace_exact(rows, ncols))


def test_rref_reports_independent_rows():
    m = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    red, pivots, used = rref_mod(m, 7)
    assert pivots == [0, 1] and len(red) == 2
    assert sorted(used) in ([0, 2], [1, 2])


@given(st.lists(st.builds(Fraction, st.integers(-10 ** 6, 10 ** 6), st.integers(1, 10 ** 6)),
                min_size=4, max_size=4).filter(lambda v: v[-1] != 0))
def test_lift_recovers_a_rational_nullvector(v):
    # three rows orthogonal to v with an invertible 3x3 block, so the nullspace is v's line
    v = [c / v[-1] for c in v]
    cols = len(v)
    rows = []
    for seed in ((1, 2, 3), (5, -1, 2), (0, 7, -3)):
        r = [Fraction(s) for s in seed]
        rows.append(r + [-sum(a * b for a, b in zip(r, v))])
    rows = [integer_row(r) for r in rows]
    assert len(nullspace_exact(rows, cols)) == 1

    def build(p):
        return np.array([[c % p for c in r] for r in rows], dtype=np.int64)

    def verify(cand):
        return all(sum(a * b for a, b in zip(r, cand)) == 0 for r in rows)

    got = lift_nullvector(build, cols, verify)
    assert got is not None and verify(got)
    assert [c / got[-1] for c in got] == v
