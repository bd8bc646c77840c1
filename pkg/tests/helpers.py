"""Shared hypothesis strategies and small constructors for the tests."""
from fractions import Fraction

from hypothesis import strategies as st

from diagcas.exact import UniPoly
from diagcas.jsonio import parse_curve, parse_unirat
from diagcas.multipoly import MultiPoly
from diagcas.parser import parse_expression, parse_polynomial
from diagcas.series import PowerSeries

small_ints = st.integers(min_value=-9, max_value=9)
nonzero_ints = small_ints.filter(bool)
rationals = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 12))
nonzero_rationals = rationals.filter(bool)


def unipolys(max_degree=4, var="x", nonzero=False):
    polys = st.lists(rationals, min_size=0, max_size=max_degree + 1).map(lambda cs: UniPoly(cs, var))
    return polys.filter(lambda p: not p.is_zero()) if nonzero else polys


def multipolys(vars=("x", "y", "z"), max_exp=2, max_terms=5):
    k = len(vars)
    mono = st.tuples(*[st.integers(0, max_exp)] * k)
    return st.dictionaries(mono, nonzero_ints, max_size=max_terms).map(lambda t: MultiPoly(vars, t))


def unit_series(order=10, var="x"):
    """Series with constant term 1."""
    return st.lists(rationals, min_size=order, max_size=order).map(
        lambda cs: PowerSeries([1] + cs, var))


def series(order=10, var="x"):
    return st.lists(rationals, min_size=order + 1, max_size=order + 1).map(lambda cs: PowerSeries(cs, var))


def P(text, vars=("x", "y", "z")):
    return parse_polynomial(text, list(vars))


def R(text, vars=("x", "y", "z")):
    return parse_expression(text, list(vars))


def U(text, var="x"):
    return parse_unirat(text, var)


def curve(text, vars=("x", "y"), param="p", params=None):
    return parse_curve(text, list(vars), param, params)


def S(coeffs, var="x"):
    return PowerSeries([Fraction(c) for c in coeffs], var)
