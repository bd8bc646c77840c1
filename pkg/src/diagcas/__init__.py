"""Exact computer algebra for diagonals of rational functions, Newton-polygon genus,
j-invariants and Hauptmoduls, pullbacked hypergeometric series and ODE guessing."""
from .diagonal import MonomialMap, diagonal, monomial_transform, power_substitution
from .elliptic import hauptmodul, j_invariant, quadratic_split, verify_relation
from .exact import UniPoly, UniRat, poly_gcd, unirat_equal, unirat_normalize
from .lattice import generic_genus, interior_lattice_points, newton_polygon
from .multipoly import CurvePoly, MultiPoly, RationalFunction, substitute
from .ode import DiffOp, annihilates, apply, guess_ode, symmetric_square
from .parser import parse_expression, parse_polynomial
from .series import (AlgebraicPrefactor, PowerSeries, compose_ratfunc, hypergeom_series,
                     prefactor_series, pullbacked_solution)

__version__ = "0.1.0"
