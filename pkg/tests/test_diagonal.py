from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diagcas.diagonal import MonomialMap, diagonal, monomial_transform, power_substitution
from diagcas.errors import InvalidMonomialMap, NotExpandable, TooExpensive
from diagcas.multipoly import MultiPoly, RationalFunction, substitute
from diagcas.series import PowerSeries

from helpers import P, R, S, multipolys, nonzero_ints, small_ints

XYZ = ("x", "y", "z")


def brute_diagonal(r: RationalFunction, order: int) -> list[Fraction]:
    """Independent oracle: 1/D = sum_k (1 - D/D0)^k / D0, truncated to the exponent box."""
    k = len(r.vars)
    d0 = r.den.constant_term()
    tail = {e: -c / d0 for e, c in r.den.terms.items() if any(e)}

    def mul(a, b):
        out = {}
        for e, c in a.items():
            for f, d in b.items():
                g = tuple(i + j for i, j in zip(e, f))
                if max(g) <= order:
                    out[g] = out.get(g, 0) + c * d
        return {e: c for e, c in out.items() if c}

    inverse = {(0,) * k: Fraction(1) / d0}
    power = {(0,) * k: Fraction(1)}
    for _ in range(k * order):
        power = mul(power, tail)
        for e, c in power.items():
            inverse[e] = inverse.get(e, 0) + c / d0
    full = mul({e: Fraction(c) for e, c in r.num.terms.items()}, inverse)
    return [full.get((m,) * k, Fraction(0)) for m in range(order + 1)]


def test_two_variable_diagonal_is_central_binomial():
    assert diagonal(R("1/(1-x-y)", ("x", "y")), 3) == S([1, 2, 6, 20])


def test_four_variable_integrand():
    r = R("1/(1+3*y+z+9*y*z+11*z^2*y+3*u*x)", ("x", "y", "z", "u"))
    assert diagonal(r, 5) == S([1, 0, 648, -72900, 1224720, -330674400])


def test_product_of_legendre_curves_has_zero_diagonal():
    r = R("x*y*z/((1+z)^2-x*(1-x)*(x-x*y*z*w)*y*(1-y)*(y-x*y*z*w))", ("x", "y", "z", "w"))
    assert diagonal(r, 4).is_zero()


denominators = multipolys(max_exp=2, max_terms=4).map(lambda p: p - p.constant_term() + 1)


@given(multipolys(max_exp=2, max_terms=3), denominators)
def test_matches_brute_force_expansion(num, den):
    r = RationalFunction(num, den)
    assert list(diagonal(r, 4).coeffs) == brute_diagonal(r, 4)


@given(multipolys(max_terms=3), denominators, multipolys(max_terms=3), denominators, small_ints, small_ints)
def test_linearity(n1, d1, n2, d2, a, b):
    r, s = RationalFunction(n1, d1), RationalFunction(n2, d2)
    combo = diagonal(r * a + s * b, 4)
    assert combo == diagonal(r, 4).scale(a) + diagonal(s, 4).scale(b)


@given(multipolys(max_terms=3), denominators, st.sampled_from(list(permutations(XYZ))))
def test_independent_of_variable_order(num, den, perm):
    r = RationalFunction(num, den)
    relabelled = substitute(r, {v: R(w) for v, w in zip(XYZ, perm)}, XYZ)
    assert diagonal(relabelled, 4) == diagonal(r, 4)


def test_symmetric_relabelling_of_simplex():
    r = R("1/(1-x-y-z)")
    assert diagonal(substitute(r, {"x": R("y"), "y": R("z"), "z": R("x")}, XYZ), 5) == diagonal(r, 5)


def test_denominator_vanishing_at_origin():
    with pytest.raises(NotExpandable):
        diagonal(R("1/(x+y)", ("x", "y")), 3)


def test_cost_guard_for_many_variables():
    r = R("1/(1-x-y-z-u)", ("x", "y", "z", "u"))
    with pytest.raises(TooExpensive):
        diagonal(r, 16)
    assert diagonal(r, 3, force=True) == diagonal(r, 3)


def test_numerator_monomial_shift():
    # the numerator x*y shifts the diagonal of 1/(1-x-y) by one place
    r = R("x*y/(1-x-y)", ("x", "y"))
    assert diagonal(r, 4) == S([0, 1, 2, 6, 20])


# monomial maps

def test_identity_map_leaves_integrand_unchanged():
    r = R("1/(1+x+y+z+x*y)")
    assert monomial_transform(r, MonomialMap([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == r


def test_degree_two_map_doubles_the_diagonal():
    # images x*z^2, x*y, y: each variable appears with total exponent 2 and det = 2
    m = MonomialMap([[1, 1, 0], [0, 1, 1], [2, 0, 0]])
    assert m.n == 2
    r = R("1/(1-x-y-z)")
    old = diagonal(r, 4)
    new = diagonal(monomial_transform(r, m), 8)
    assert [new[k] for k in range(0, 9, 2)] == list(old.coeffs)
    assert all(new[k] == 0 for k in range(1, 9, 2))


@pytest.mark.parametrize("matrix, problem", [
    ([[1, 1, 0], [0, 1, 1], [1, 0, 0]], "not all equal"),
    ([[1, 1], [1, 1]], "determinant"),
    ([[1, 1, 1], [1, 1, 1], [1, 1, 1]], "determinant"),
    ([[1, 2, 0], [1, 0, 2], [1, 1, 1]], "power of the product"),
    ([[1, 0], [-1, 2]], "negative"),
])
def test_invalid_monomial_maps(matrix, problem):
    with pytest.raises(InvalidMonomialMap, match=problem):
        MonomialMap(matrix)


def test_map_from_images():
    m = MonomialMap.from_images([(1, 0, 2), (1, 1, 0), (0, 1, 0)])
    assert m.images() == [(1, 0, 2), (1, 1, 0), (0, 1, 0)]
    assert m.matrix == [[1, 1, 0], [0, 1, 1], [2, 0, 0]]


def test_power_substitution_identity():
    r = R("1/(1+2*x+3*y*z)")
    assert power_substitution(r, 1) == r


@given(st.integers(2, 3))
def test_power_substitution_spreads_coefficients(n):
    r = R("1/(1-x-y-z)")
    old = diagonal(r, 3)
    new = diagonal(power_substitution(r, n), 3 * n)
    for k in range(3 * n + 1):
        assert new[k] == (old[k // n] if k % n == 0 else 0)


@given(st.lists(nonzero_ints, min_size=9, max_size=9))
def test_squared_nine_parameter_integrand(params):
    names = ["a", "b1", "b2", "b3", "c1", "c2", "c3", "d", "e"]
    vals = dict(zip(names, params))
    vals["a"] = 1
    den = P("a + b1*x + b2*y + b3*z + c1*y*z + c2*x*z + c3*x*y + d*y^2*z + e*z*x^2",
            XYZ + tuple(names)).evaluate(vals).with_vars(XYZ)
    r = RationalFunction(MultiPoly.const(1, XYZ), den)
    old = diagonal(r, 3)
    new = diagonal(power_substitution(r, 2), 6)
    assert new == PowerSeries([old[k // 2] if k % 2 == 0 else 0 for k in range(7)])
