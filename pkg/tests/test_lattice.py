from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from diagcas.curves import eliminate_to_curve
from diagcas.lattice import (LatticePolygon, curve_support, generic_genus, genus_report,
                             interior_lattice_points, newton_polygon)

from helpers import P, curve

BICUBIC_SUPPORT = [(0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)]


def test_triangle_hull():
    poly = newton_polygon([(0, 0), (3, 0), (0, 3), (1, 1)])
    assert set(poly.vertices) == {(0, 0), (3, 0), (0, 3)}
    assert poly.kind == "polygon"


def test_bicubic_support_is_a_right_triangle_with_one_interior_point():
    c = curve("a*x*y^2 + b1*x^2*y^2 + b2*x*y^3 + b3*p*y + c1*p*y^2 + c2*p*x*y"
              " + c3*x^2*y^3 + d1*x^3*y^3 + d2*y^3 + d3*p^2",
              params={"a": 2, "b1": 3, "b2": 5, "b3": 7, "c1": 11, "c2": 13, "c3": 17,
                      "d1": 19, "d2": 23, "d3": 29})
    assert curve_support(c) == set(BICUBIC_SUPPORT)
    poly = newton_polygon(BICUBIC_SUPPORT)
    assert set(poly.vertices) == {(0, 0), (0, 3), (3, 3)}
    assert poly.interior_points() == [(1, 2)]
    assert len(poly.lattice_points()) == 10


def test_collinear_support_is_a_segment():
    poly = newton_polygon([(0, 0), (2, 2), (4, 4), (1, 1)])
    assert poly.degenerate and poly.kind == "segment"
    assert poly.vertices == ((0, 0), (4, 4))
    assert poly.boundary_count() == 5
    assert interior_lattice_points(poly) == 0


def test_single_point():
    poly = newton_polygon([(2, 3)])
    assert poly.kind == "point" and interior_lattice_points(poly) == 0


@pytest.mark.parametrize("side, interior", [(4, 9), (1, 0), (2, 1), (5, 16)])
def test_square_interior_counts(side, interior):
    poly = newton_polygon([(0, 0), (side, 0), (0, side), (side, side)])
    assert interior_lattice_points(poly) == interior
    # oracle: direct enumeration of the open square
    assert interior == sum(1 for i in range(1, side) for j in range(1, side))


def test_vertices_are_counterclockwise_without_collinear_points():
    poly = newton_polygon([(0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (0, 2), (1, 1)])
    assert poly.vertices == ((0, 0), (2, 0), (2, 2), (0, 2))
    assert poly.twice_area() == 8


points = st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=1, max_size=9)


@given(points)
def test_picks_theorem(support):
    poly = newton_polygon(support)
    assert poly.pick_consistent()
    if not poly.degenerate:
        assert poly.twice_area() == 2 * len(poly.interior_points()) + poly.boundary_count() - 2


def _apply(m, t, pts):
    (a, b), (c, d) = m
    return [(a * x + b * y + t[0], c * x + d * y + t[1]) for x, y in pts]


unimodular = st.lists(st.sampled_from([((1, 1), (0, 1)), ((1, 0), (1, 1)), ((0, -1), (1, 0)),
                                       ((1, -1), (0, 1)), ((-1, 0), (0, 1))]), min_size=1, max_size=4)


@given(points, unimodular, st.tuples(st.integers(-5, 5), st.integers(-5, 5)))
def test_interior_count_is_unimodular_invariant(support, moves, shift):
    before = interior_lattice_points(newton_polygon(support))
    pts = support
    for m in moves:
        pts = _apply(m, (0, 0), pts)
    pts = _apply(((1, 0), (0, 1)), shift, pts)
    assert interior_lattice_points(newton_polygon(pts)) == before


def test_side_three_triangle_is_maximal_among_its_sub_supports():
    for k in range(1, 10):
        for sub in combinations(BICUBIC_SUPPORT, k):
            poly = newton_polygon(sub)
            assert len(poly.lattice_points()) <= 10
            assert interior_lattice_points(poly) <= 1


# generic genus of curves met as denominators

@pytest.mark.parametrize("params", [
    dict(a=1, b1=2, b2=3, b3=5, c1=7, c2=11, c3=13, d=17, e=19),
    dict(a=-4, b1=9, b2=-1, b3=2, c1=6, c2=-3, c3=8, d=5, e=-7),
])
def test_biquadratic_is_genus_one(params):
    names = ("x", "y", "z") + tuple(params)
    d = P("a + b1*x + b2*y + b3*z + c1*y*z + c2*x*z + c3*x*y + d*y^2*z + e*z*x^2", names)
    c = eliminate_to_curve(d.evaluate(params).with_vars(("x", "y", "z")), "z")
    assert generic_genus(c) == 1


def test_squared_biquadratic_is_genus_nine():
    d = P("1 + 2*x^2 + 3*y^2 + 5*z^2 + 7*y^2*z^2 + 11*x^2*z^2 + 13*x^2*y^2 + 17*y^4*z^2 + 19*z^2*x^4")
    assert generic_genus(eliminate_to_curve(d, "z")) == 9


def test_cayley_cubic_curve_is_genus_four():
    assert generic_genus(eliminate_to_curve(P("x^2+y^2+z^2+x*y*z-4"), "z")) == 4


def test_split_jacobian_planar_curve_is_genus_two():
    assert generic_genus(eliminate_to_curve(P("1+x+y+z+x*y+y*z-x^3*y*z"), "z")) == 2


def test_multipoly_needs_curve_variables():
    c = eliminate_to_curve(P("1+3*y+z+9*y*z+11*z^2*y+3*u*x", ("x", "y", "z", "u")), "u")
    assert generic_genus(c, ["z", "y"]) == 1
    with pytest.raises(ValueError):
        generic_genus(c)


def test_genus_report_json():
    rep = genus_report(eliminate_to_curve(P("x^2+y^2+z^2+x*y*z-4"), "z"))
    out = rep.to_json()
    assert out["generic_genus"] == 4
    assert sorted(map(tuple, out["interior_points"])) == [(1, 1), (2, 2), (2, 3), (3, 2)]
    assert "generic" in out["note"]
    assert isinstance(LatticePolygon(tuple(map(tuple, out["hull"]))), LatticePolygon)
