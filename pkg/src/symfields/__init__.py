"""Exact symbolic verification of invariant-field, Lie-algebra, divided-difference,
elliptic-curve and truncated-ring identities."""

from .kernel import (
    GF,
    QQ,
    Polynomial,
    RationalFunction,
    Registry,
    VariableId,
    field_from_spec,
    parse_expr,
    poly_gcd,
    print_canonical,
    rf_eval,
    rf_make,
)

__version__ = "0.1.0"

__all__ = [
    "GF", "QQ", "Polynomial", "RationalFunction", "Registry", "VariableId", "field_from_spec",
    "parse_expr", "poly_gcd", "print_canonical", "rf_eval", "rf_make",
]
