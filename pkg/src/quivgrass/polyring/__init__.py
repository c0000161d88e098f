"""Multivariate polynomials over Q and Groebner-basis ideal operations."""

from ._backend import BACKEND
from .groebner import (
    DEFAULT_MAX_STEPS,
    IdealBasis,
    MonomialOrder,
    ResourceLimitExceeded,
    Ring,
    eliminate,
    groebner,
    ideal_contains,
    ideal_equal,
    ideal_member,
    intersect,
    normal_form,
    quotient,
    saturate,
    split_linear,
)
from .poly import Monomial, Poly, PolySyntaxError, Var, aux_var, format_poly, parse_poly, y_var

__all__ = [
    "BACKEND", "DEFAULT_MAX_STEPS", "IdealBasis", "Monomial", "MonomialOrder", "Poly",
    "PolySyntaxError", "ResourceLimitExceeded", "Ring", "Var", "aux_var", "eliminate",
    "format_poly", "groebner", "ideal_contains", "ideal_equal", "ideal_member", "intersect",
    "normal_form", "parse_poly", "quotient", "saturate", "split_linear", "y_var",
]
