import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from symfields import GF, QQ
from symfields.elliptic import (
    HTransform,
    WeierstrassQuintuple,
    b_invariants,
    beta_map,
    char3_a6_class,
    char_reduction_consistency,
    cokernel_size_by_enumeration,
    discriminant,
    h_transform,
    isomorphic_over,
    j_invariant,
    power_class,
    short_form_invariants,
)
from symfields.elliptic.isomorphism import short_orbit, smooth_short_forms
from symfields.elliptic.suite import (
    _fixed_slice_agreement,
    char3_supersingular_agreement,
    exhaustive_agreement,
    j_invariance,
)
from symfields.elliptic.twists import _beta_image, roots_of_unity
from symfields.errors import DivisionByZeroError, PreconditionError, SingularCurveError

W = WeierstrassQuintuple.make
coeff = st.integers(-6, 6)
quintuples = st.tuples(coeff, coeff, coeff, coeff, coeff)


# -- frozen values --------------------------------------------------------------------


def test_b_invariants_x3_minus_x():
    b = b_invariants(W((0, 0, 0, -1, 0)))
    assert (b.b2, b.b4, b.b6, b.b8, b.delta) == (0, -2, 0, -1, 64)
    assert j_invariant(W((0, 0, 0, -1, 0))) == 1728


def test_x3_plus_1():
    w = W((0, 0, 0, 0, 1))
    assert discriminant(w) == -432
    assert j_invariant(w) == 0


def test_zero_curve():
    b = b_invariants(W((0,) * 5))
    assert (b.b2, b.b4, b.b6, b.b8, b.delta) == (0,) * 5
    with pytest.raises(SingularCurveError):
        j_invariant(W((0,) * 5))


def test_char2_supersingular():
    w = W((0, 0, 1, 0, 0), GF(2))
    assert discriminant(w) == 1 and j_invariant(w) == 0


def test_h_transform_examples():
    assert h_transform(W((0, 0, 0, 1, 0)), HTransform(2)) == W((0, 0, 0, 16, 0))
    w = W((1, 2, 3, 4, 5))
    assert h_transform(w, HTransform(1)) == w
    with pytest.raises(DivisionByZeroError):
        h_transform(w, HTransform(0))


@pytest.mark.parametrize("a4, a6, want", [
    (1, 0, (1728, 4, 1)),
    (0, 1, (0, 6, 1)),
    (1, 1, (Fraction(6912, 31), 2, 1)),
])
def test_short_form_invariants(a4, a6, want):
    s = short_form_invariants(WeierstrassQuintuple.short(a4, a6))
    assert (s.j, s.twist.n, QQ.wrap(s.twist.gamma)) == want


def test_short_form_preconditions():
    with pytest.raises(PreconditionError):
        short_form_invariants(WeierstrassQuintuple.short(1, 1, GF(3)))
    with pytest.raises(PreconditionError):
        short_form_invariants(W((1, 0, 0, 1, 1)))
    with pytest.raises(SingularCurveError):
        short_form_invariants(WeierstrassQuintuple.short(0, 0))


@pytest.mark.parametrize("gamma, n, want", [
    (Fraction(-12, 5), 2, -15),
    (8, 2, 2),
    (Fraction(1, 4), 2, 1),
    (16, 4, 1),
    (-2, 3, 2),  # -1 is a cube
])
def test_rational_power_classes(gamma, n, want):
    assert power_class(gamma, QQ, n) == want


def test_power_class_is_a_class_invariant():
    F = GF(13)
    for g in range(1, 13):
        for s in range(1, 13):
            assert power_class(g * s**4, F, 4) == power_class(g, F, 4)


# -- sympy oracles --------------------------------------------------------------------


x, y = sympy.symbols("x y")


def sympy_transform(a, t):
    a1, a2, a3, a4, a6 = a
    eq = y**2 + a1 * x * y + a3 * y - (x**3 + a2 * x**2 + a4 * x + a6)
    sub = eq.subs({x: x / t[0] ** 2 + t[1], y: y / t[0] ** 3 + t[2] * x + t[3]}, simultaneous=True)
    P = sympy.Poly(sympy.expand(sub * sympy.Integer(t[0]) ** 6), x, y)
    assert P.coeff_monomial(y**2) == 1 and P.coeff_monomial(x**3) == -1
    return (P.coeff_monomial(x * y), -P.coeff_monomial(x**2), P.coeff_monomial(y),
            -P.coeff_monomial(x), -P.coeff_monomial(1))


@settings(max_examples=40, deadline=None)
@given(quintuples, st.integers(1, 4), coeff, coeff, coeff, st.booleans())
def test_h_transform_matches_sympy(a, cc, dd, ee, ff, neg):
    cc = -cc if neg else cc
    got = h_transform(W(a), HTransform(cc, dd, ee, ff)).coeffs
    assert tuple(got) == sympy_transform(a, (cc, dd, ee, ff))


@settings(max_examples=60, deadline=None)
@given(quintuples)
def test_classical_c4_c6_relation(a):
    # 1728 Delta = c4^3 - c6^2, an identity independent of how Delta is coded
    b = b_invariants(W(a))
    c4 = b.b2**2 - 24 * b.b4
    c6 = -b.b2**3 + 36 * b.b2 * b.b4 - 216 * b.b6
    assert 1728 * b.delta == c4**3 - c6**2
    assert 4 * b.b8 == b.b2 * b.b6 - b.b4**2


@settings(max_examples=30, deadline=None)
@given(st.integers(-9, 9).filter(bool), st.integers(-9, 9))
def test_short_form_delta(a4, a6):
    w = WeierstrassQuintuple.short(a4, a6)
    assert discriminant(w) == -16 * (4 * a4**3 + 27 * a6**2)
    if discriminant(w):
        assert j_invariant(w) == Fraction(1728 * 4 * a4**3, 4 * a4**3 + 27 * a6**2)


# -- H-invariance and the brute-force oracle ------------------------------------------


@pytest.mark.parametrize("field", [QQ, GF(5), GF(101), GF(3, 2)])
def test_j_invariance(field):
    assert j_invariance(field, trials=25, seed=3).ok


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32))
def test_witness_is_a_witness(seed):
    F = GF(7)
    rng = random.Random(seed)
    while True:
        w = WeierstrassQuintuple(tuple(F.random(rng) for _ in range(5)), F)
        if discriminant(w) != 0:
            break
    t = HTransform.random(rng, F)
    w2 = h_transform(w, t)
    h = isomorphic_over(F, w, w2)
    assert h is not None and h_transform(w, h) == w2


def test_twists_over_f5():
    F = GF(5)
    a, b = WeierstrassQuintuple.short(1, 0, F), WeierstrassQuintuple.short(2, 0, F)
    assert j_invariant(a) == j_invariant(b) == 1728
    assert isomorphic_over(F, a, b) is None
    assert short_form_invariants(a) != short_form_invariants(b)


def test_different_j_not_isomorphic():
    F = GF(7)
    assert isomorphic_over(F, WeierstrassQuintuple.short(1, 0, F), WeierstrassQuintuple.short(0, 1, F)) is None


def test_brute_force_field_cap():
    with pytest.raises(PreconditionError):
        isomorphic_over(GF(37), WeierstrassQuintuple.short(1, 0, GF(37)), WeierstrassQuintuple.short(1, 0, GF(37)))


@pytest.mark.parametrize("p", [5, 7])
def test_exhaustive_agreement(p):
    assert exhaustive_agreement(GF(p)).ok


def test_short_orbit_contains_itself():
    for w in smooth_short_forms(GF(5)):
        assert (w.raw[3], w.raw[4]) in short_orbit(w)


# -- reductions and beta maps ---------------------------------------------------------


def test_char_reduction_consistency():
    assert char_reduction_consistency(2)
    assert char_reduction_consistency(3)


def test_char_reduction_negative_control():
    from symfields.elliptic.reduction import char2_delta

    assert not char_reduction_consistency(2, delta_formula=lambda a1, a2, a3, a4, a6: char2_delta(a1, a2, a3, a4, a6) + a1**6)


@pytest.mark.parametrize("p, k, q, a, size", [
    (3, 2, 3, 1, 3),
    (2, 2, 4, 1, 4),
    (2, 2, 4, 0, 1),
])
def test_beta_examples(p, k, q, a, size):
    assert beta_map(q, a, GF(p, k)).cokernel_size == size


def test_beta_needs_a_power_of_p():
    with pytest.raises(PreconditionError):
        beta_map(2, 1, GF(3, 2))
    with pytest.raises(PreconditionError):
        beta_map(6, 1, GF(2, 2))


@pytest.mark.parametrize("p, k", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_beta_matches_enumeration(p, k):
    F = GF(p, k)
    for q in (p, p * p, p**3):
        for a in F.elements():
            assert beta_map(q, F.wrap(a), F).cokernel_size == cokernel_size_by_enumeration(q, F.wrap(a), F)


def test_beta_map_is_the_formula():
    F = GF(3, 2)
    beta = beta_map(3, F.generator(), F)
    for b in F.elements():
        bb = F.wrap(b)
        assert beta(bb) == bb**3 - F.generator() * bb


def test_char3_a6_class_against_brute_force():
    assert char3_supersingular_agreement(GF(3)).ok


def test_char3_literal_naming_disagrees():
    # the set {zeta^2 a6 + c^3 + a4 c} sits in the cokernel of beta_(3,-a4); with beta_(3,a4) it is wrong
    F = GF(3)
    curves = [w for w in (WeierstrassQuintuple((0, 0, 0, a4, a6), F) for a4 in F.elements() for a6 in F.elements())
              if discriminant(w) != 0]
    mu4 = roots_of_unity(F, 4)

    def literal(w):
        a4, a6 = w.raw[3], w.raw[4]
        return frozenset(F.add(F.mul(F.pow(z, 2), a6), v) for z in mu4 for v in _beta_image(3, a4, F))

    assert not _fixed_slice_agreement(curves, slice(0, 4), 4, literal).ok
    assert _fixed_slice_agreement(curves, slice(0, 4), 4,
                                  lambda w: char3_a6_class(F.wrap(w.raw[3]), F.wrap(w.raw[4]), F)).ok
