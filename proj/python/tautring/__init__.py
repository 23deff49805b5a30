"""Tautological classes on moduli of stable curves.

Classes are dicts ``{"genus", "markings", "terms"}`` with rational
coefficients as strings; see the JSON formats in the README.
"""

import json
from fractions import Fraction

from . import _core
from ._core import DefectError, IntegrityError, InterpolationMismatch

__all__ = [
    "DefectError",
    "IntegrityError",
    "InterpolationMismatch",
    "enumerate_graphs",
    "omega",
    "theta",
    "dr_coefficient",
    "boundary_expression",
    "star_reduce",
    "pushforward",
    "has_property_star",
    "coefficients",
]


def enumerate_graphs(g, n, max_edges):
    return json.loads(_core.enumerate_graphs(g, n, max_edges))


def omega(g, A, degree):
    """Constant term in r of the DR cycle class Omega, degrees 0..degree."""
    return json.loads(_core.omega(g, list(A), degree))


def theta(g, A):
    return json.loads(_core.theta(g, list(A)))


def dr_coefficient(g, monomial, multiplier, forget):
    return json.loads(_core.dr_coefficient(g, list(monomial), list(multiplier), list(forget)))


def boundary_expression(g, n, monomial, db=None):
    return json.loads(_core.express(g, n, monomial, "" if db is None else str(db)))


def star_reduce(cls):
    return json.loads(_core.star_reduce(json.dumps(cls)))


def pushforward(cls, m=1):
    """Forget the last m markings."""
    return json.loads(_core.pushforward(json.dumps(cls), m))


def has_property_star(stratum):
    return _core.has_property_star(json.dumps(stratum))


def coefficients(cls):
    """List of (term, Fraction) pairs."""
    return [(t, Fraction(t["coeff"])) for t in cls["terms"]]
