"""Exact coefficient fields, sparse polynomials and canonical rational functions."""

from .expr import format_polynomial, parse_expr, print_canonical, rf_eval, rf_make
from .fields import GF, QQ, Field, FiniteField, GFElement, field_from_spec
from .gcd import poly_gcd, poly_lcm
from .polynomial import Polynomial
from .rational import RationalFunction
from .registry import DEFAULT_REGISTRY, Registry, VariableId

__all__ = [
    "DEFAULT_REGISTRY", "GF", "QQ", "Field", "FiniteField", "GFElement", "Polynomial",
    "RationalFunction", "Registry", "VariableId", "field_from_spec", "format_polynomial",
    "parse_expr", "poly_gcd", "poly_lcm", "print_canonical", "rf_eval", "rf_make",
]
