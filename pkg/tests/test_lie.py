import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symfields import Registry, parse_expr
from symfields.errors import DependentBasisError, NotClosedError, PreconditionError
from symfields.lie import (
    Derivation,
    LieBasis,
    bracket,
    is_abelian,
    is_closed,
    normal_form_2dim,
    normal_form_3dim,
    proportional_over_k,
    random_derivation,
    rf_derivative,
    sl2_basis,
    span_equal,
)


@pytest.fixture
def reg():
    r = Registry()
    r.var("X")
    return r


def D(text, reg):
    return Derivation.parse(text, "X", reg)


def B(texts, reg):
    return LieBasis.parse(texts, "X", reg)


def test_derivative_examples(reg):
    x = reg.lookup("X")
    assert rf_derivative(parse_expr("X^2", reg), x) == parse_expr("2*X", reg)
    assert rf_derivative(parse_expr("1/X", reg), x) == parse_expr("-1/X^2", reg)
    assert rf_derivative(parse_expr("5/7", reg), x).is_zero()


def test_bracket_examples(reg):
    assert bracket(D("1", reg), D("X", reg)) == D("1", reg)
    assert bracket(D("X", reg), D("X^2", reg)) == D("X^2", reg)
    d = D("(X+1)/(X^2-3)", reg)
    assert bracket(d, d).is_zero()


def test_abelian_and_closed(reg):
    assert is_abelian(B(["1"], reg))
    assert not is_abelian(B(["1", "X"], reg))
    with pytest.raises(DependentBasisError):
        B(["1", "2"], reg)
    assert is_closed(B(["1", "X", "X^2"], reg))
    assert not is_closed(B(["X^2", "X^3"], reg))
    assert is_closed(B(["1"], reg))


def test_normal_form_2dim(reg):
    X = parse_expr("X", reg)
    assert normal_form_2dim(B(["1", "X"], reg)) == X
    assert normal_form_2dim(B(["1 + X", "X"], reg)) == X
    with pytest.raises(NotClosedError):
        normal_form_2dim(B(["X^2", "X^3"], reg))


def test_normal_form_2dim_eta1_is_d_dR(reg):
    basis = B(["X^2", "X^2 + X^3"], reg)
    with pytest.raises(NotClosedError):
        normal_form_2dim(basis)
    basis = B(["(X+1)^2", "X*(X+1)"], reg)
    r = normal_form_2dim(basis)
    x = reg.lookup("X")
    pair = [Derivation(r.derivative(x).inverse(), x), Derivation(r / r.derivative(x), x)]
    assert span_equal(list(basis), pair)


def test_normal_form_3dim(reg):
    assert normal_form_3dim(B(["1", "X", "X^2"], reg)) == parse_expr("X", reg)
    conj = B(["(X+1)^2", "X*(X+1)", "X^2"], reg)
    r = normal_form_3dim(conj)
    assert r == parse_expr("X/(X+1)", reg)
    assert span_equal(list(conj), sl2_basis(r, reg.lookup("X")))
    with pytest.raises(NotClosedError):
        normal_form_3dim(B(["1", "X", "X^3"], reg))
    with pytest.raises(PreconditionError):
        normal_form_3dim(B(["1", "X"], reg))


def test_proportionality_criterion(reg):
    x = reg.lookup("X")
    f = parse_expr("(X^2+1)/(X-3)", reg)
    assert proportional_over_k(f, 5 * f, x)
    assert not proportional_over_k(f, parse_expr("X", reg) * f, x)


seeds = st.integers(0, 10**6)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_antisymmetry_and_jacobi(seed):
    reg = Registry()
    x = reg.var("X")
    rng = random.Random(seed)
    a, b, c = (random_derivation(rng, x, reg) for _ in range(3))
    assert bracket(a, b) == -bracket(b, a)
    jac = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))
    assert jac.is_zero()


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(-9, 9))
def test_commuting_scalar_multiples(seed, c):
    reg = Registry()
    x = reg.var("X")
    f = random_derivation(random.Random(seed), x, reg)
    assert bracket(f, f * c).is_zero()
