"""Acceptance criteria 1-12.  Each test prints one PASS/FAIL line."""
import random
from contextlib import contextmanager
from fractions import Fraction

import pytest

from diagcas.curves import reduce_modulo_curve, triquadratic_involution
from diagcas.diagonal import diagonal
from diagcas.multipoly import RationalFunction, substitute
from diagcas.ode import DiffOp, apply, guess_ode
from diagcas.series import pullbacked_solution
from diagcas.registry import build_series, load_registry, run_case

import test_elliptic
import test_lattice
import test_ode
import test_series
from helpers import P, R, S, U

REGISTRY = load_registry()
F = Fraction


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(n, title):
        ok = False
        try:
            yield
            ok = True
        finally:
            with capsys.disabled():
                print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {title}")
    return run


def cases_pass(*names):
    for name in names:
        report = run_case(name, REGISTRY)
        assert report.passed, report.line()


def poly_op(*coeffs):
    return DiffOp([U(c).num for c in coeffs])


FOUR_VARIABLE = [1, 0, 648, -72900, 1224720, -330674400, 23370413220, -1276733858400,
            180019474034400, -12013427240614800]
U_EXTENSION = [1, -78, 15606, -3888540, 1069866630, -311621002308, 94190901642684, -29220290149904568]


def test_criterion_1(criterion):
    with criterion(1, "four-variable diagonal, its pullbacked 2F1 form and the N=2 family"):
        r = R("1/(1+3*y+z+9*y*z+11*z^2*y+3*u*x)", ("x", "y", "z", "u"))
        assert diagonal(r, 9) == S(FOUR_VARIABLE)
        cases_pass("four-variable-diagonal", "four-variable-pullback", "four-variable-family-n2")


def test_criterion_2(criterion):
    with criterion(2, "u-extension diagonals for x=0, n=1, n=2 and the pullback"):
        cases_pass("u-extension-x-zero", "u-extension-n1", "u-extension-n2", "u-extension-pullback")
        want = REGISTRY["u-extension-x-zero"].expected["series"]
        assert [F(c) for c in want] == U_EXTENSION


def test_criterion_3(criterion):
    with criterion(3, "parameters replaced by rational functions of x*y*z"):
        cases_pass("parameter-substitution")
        # the prefactor exponent of (1+7x^2) must be 1/2; with 1/4 the series differs at x^2
        case = REGISTRY["parameter-substitution"]
        term = dict(case.expected["pullbacked"][0])
        term["prefactor"] = [[b, "1/4" if b == "1+7*x^2" else e] for b, e in term["prefactor"]]
        diag = build_series(case.source, 8, random.Random(0))
        quarter = build_series({"pullbacked": [term]}, 8, random.Random(0))
        assert diag.first_mismatch(quarter) == 2


def test_criterion_4(criterion):
    with criterion(4, "generic genus of biquadratic, bicubic, squared, planar, Cayley cubic and genus-one curves"):
        cases_pass("biquadratic-genus", "bicubic-genus", "squared-biquadratic-genus",
                   "split-jacobian-genus", "cayley-cubic-genus", "genus-one-curve-genus")


def test_criterion_5(criterion):
    with criterion(5, "Hauptmoduls of Legendre, genus-one, tri-quadratic slices, two-parameter and quadric cases"):
        cases_pass("legendre-hauptmodul", "genus-one-hauptmodul", "triquadratic-j-slice-2",
                   "triquadratic-j-slice-5", "two-parameter-hauptmodul", "quadric-intersection-hauptmodul")


CAYLEY = poly_op("2+x", "3*x^2+14*x-8", "x*(x+8)*(x-1)")
WEIER_L2 = poly_op("-1", "4*(1-2*x)", "4*x*(1-x)")
WEIER = R("x*y/((1+y)^2-x*(1-x)*(x-x*y*z))")


def test_criterion_6_cayley_part():
    s = diagonal(R("1/(x^2+y^2+z^2+x*y*z-4)"), 40)
    assert guess_ode(s, 2, 3) == CAYLEY
    assert apply(CAYLEY, s).is_zero()
    cases_pass("cayley-cubic-telescoper", "cayley-cubic-solution", "weierstrass-telescoper")


@pytest.mark.xfail(strict=True, reason="the Weierstrass-form integrand has identically zero diagonal, "
                                       "so guessing returns the trivial operator 1, not the order-2 telescoper")
def test_criterion_6(criterion):
    with criterion(6, "telescoper recovery by guessing (Weierstrass-form diagonal is zero)"):
        test_criterion_6_cayley_part()
        s = diagonal(WEIER, 30)
        assert s.is_zero()
        guessed = guess_ode(s, 2, 3)
        assert guessed.canonical() == WEIER_L2.canonical()


def test_criterion_7(criterion):
    with criterion(7, "split Jacobian diagonal is the half-sum of two pullbacked series"):
        cases_pass("split-jacobian-half-sum")
        s1, s2 = test_ode.half_sum_parts(120)
        half = (s1 + s2).scale(F(1, 2))
        assert diagonal(R("1/(1+x+y+z+x*y+y*z-x^3*y*z)"), 8) == half.truncate(8)
        orders = [guess_ode(s, 4, 20).order for s in (s1, s2, half)]
        assert orders[0] == 2 and orders[1] == 2 and orders[2] <= 4


def test_criterion_8(criterion):
    with criterion(8, "Clausen, quadratic transformation and the algebraic-prefactor identity"):
        cases_pass("clausen", "quadratic-transformation", "legendre-pullback")
        lhs, a, h = test_series.nested_root_sides(12)
        assert pullbacked_solution(a, test_series.TWELFTHS, h, 12) == lhs


def test_criterion_9(criterion):
    with criterion(9, "fundamental modular equation and the order-3 correspondence"):
        cases_pass("fundamental-modular-equation", "modular-correspondence-order-3")


TRIQUADRATIC = ("x^2*y^2*z^2 - 2*M*x*y*z*(x+y+z) + 4*M*(M+1)*x*y*z"
                " + M^2*(x^2+y^2+z^2) - 2*M^2*(x*y+x*z+y*z)")


def test_criterion_10(criterion):
    with criterion(10, "degree-3 morphism onto the genus-two curve and the tri-quadratic involution"):
        xy = ("x", "y")
        u = R("-882000*(x-14)/(x^3+420*x-5600)", xy)
        v = R("49000*(x^3-21*x^2-140)/(x^3+420*x-5600)^2*y", xy)
        elliptic = R("v^2 - (u^3 + 4900*u^2 + 7031500*u + 2401000000)", ("u", "v"))
        image = substitute(elliptic, {"u": u, "v": v}, xy)
        rem, _ = reduce_modulo_curve(image.num, P("y^2 - (x^3+420*x-5600)*(x^3+42*x^2+1120)", xy), "y")
        assert rem.is_zero()
        s = P(TRIQUADRATIC, ("x", "y", "z", "M")).evaluate({"M": 2}).with_vars(("x", "y", "z"))
        for var in ("x", "y", "z"):
            inv = triquadratic_involution(s, var)
            assert inv.apply(s) == inv.cofactor * RationalFunction(s)


def test_criterion_11(criterion):
    with criterion(11, "product of two Legendre curves has zero diagonal"):
        cases_pass("legendre-product-vanishing")


def test_criterion_12(criterion):
    with criterion(12, "seeded property suites, 100 examples each"):
        test_lattice.test_picks_theorem()
        test_lattice.test_interior_count_is_unimodular_invariant()
        test_elliptic.test_j_is_invariant_under_affine_changes_of_x()
        test_series.test_exp_log_round_trip()
        test_series.test_log_exp_round_trip()
        test_series.test_power_round_trip()
        test_ode.test_guessed_operator_annihilates_the_series()
