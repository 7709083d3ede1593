"""Reduction of the general discriminant and j-invariant modulo 2 and 3,
compared with the characteristic-specific formulas."""

from __future__ import annotations

from ..kernel import GF, Polynomial, RationalFunction, Registry
from .weierstrass import NAMES, b_formulas, c4_formula


def char2_delta(a1, a2, a3, a4, a6):
    return a1**4 * (a1**2 * a6 - a4**2) + a3 * (a1**5 * a4 + a1**4 * a2 * a3 - a3**3 + a1**3 * a3**2)


def char2_j(a1, a2, a3, a4, a6):
    return (a1**12, char2_delta(a1, a2, a3, a4, a6))


def char3_j(a1, a2, a3, a4, a6):
    """Valid when a1 = a3 = 0."""
    return (a2**6, a2**2 * a4**2 - a2**3 * a6 - a4**3)


def char_reduction_consistency(p: int, delta_formula=None, j_formula=None) -> bool:
    """Do the general formulas reduce mod p to the characteristic-p ones?

    Works with a1..a6 as symbols over F_p (a1 = a3 = 0 when p = 3).
    ``delta_formula`` and ``j_formula`` override the characteristic-specific
    formulas; ``j_formula`` returns (numerator, denominator).
    """
    if p not in (2, 3):
        raise ValueError("p must be 2 or 3")
    field = GF(p)
    reg = Registry()
    a = [Polynomial.var(reg.var(n), field, reg) for n in NAMES]
    if p == 3:
        a[0] = a[2] = Polynomial.zero(field, reg)
    delta = b_formulas(*a)[4]
    c4 = c4_formula(*a)
    j_general = RationalFunction(c4**3, delta)
    if p == 2:
        want_delta = (delta_formula or char2_delta)(*a)
        if delta != want_delta:
            return False
    num, den = (j_formula or (char2_j if p == 2 else char3_j))(*a)
    return j_general == RationalFunction(num, den)
