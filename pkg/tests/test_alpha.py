import random

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from symfields import GF, Registry, RationalFunction, parse_expr
from symfields.alpha import (
    PN_LIST,
    LambdaDatum,
    TruncatedElement,
    compose_law_verify,
    determinant_generator,
    enabling_lemma,
    equivariance_check,
    homomorphism_check,
    random_lambda,
    run_suite,
    verify_fixed_generators,
    verify_lambda,
    xi_lambda_apply,
)
from symfields.errors import FieldMismatchError, NonInvertibleError, PreconditionError
from symfields.perm import VariableMap


def us(names, p):
    reg = Registry()
    return reg, [RationalFunction.var(reg.var(n), GF(p), reg) for n in names]


def test_example_map():
    reg, (u,) = us(["u"], 2)
    got = xi_lambda_apply(LambdaDatum.parse(2, 1, "X^2"), ["u"], u)
    assert got == TruncatedElement((u, u**2))


def test_zero_lambda_is_identity():
    reg = Registry()
    f = parse_expr("(u0 + u1^2)/(u0 + 1)", reg, GF(3))
    got = xi_lambda_apply(LambdaDatum.make(3, 1, {}), ["u0", "u1"], f)
    assert got == TruncatedElement.scalar(f, 3)


@pytest.mark.parametrize("p, n, text", [(2, 1, "X"), (3, 1, "X^2 + X^3"), (2, 2, "X^2"), (3, 1, "1/X^3")])
def test_lambda_membership(p, n, text):
    with pytest.raises(PreconditionError):
        LambdaDatum.parse(p, n, text)


def test_lambda_parse_and_arithmetic():
    d = LambdaDatum.parse(3, 1, "2*X^3 + X^6 + 1")
    assert d.terms == ((0, 1), (3, 2), (6, 1))
    assert (d + -d).terms == ()
    assert d.q == 3
    with pytest.raises(PreconditionError):
        d + LambdaDatum.make(3, 2, {})


def test_char2_composite_is_identity():
    reg = Registry()
    d = LambdaDatum.parse(2, 1, "X^2")
    assert (d + d).terms == ()
    assert compose_law_verify(d, d, [reg.var("u")], reg)


def test_p3_composition():
    reg = Registry()
    assert compose_law_verify(LambdaDatum.parse(3, 1, "X^3"), LambdaDatum.parse(3, 1, "X^6"), [reg.var("u")], reg)


def test_determinant_examples():
    _, (u0, u1) = us(["u0", "u1"], 2)
    assert determinant_generator([LambdaDatum.parse(2, 1, "X^2")], [u0, u1]) == u1**2 * u0 + u0**2 * u1
    _, (u0, u1) = us(["u0", "u1"], 3)
    assert determinant_generator([LambdaDatum.make(3, 1, {0: 2})], [u0, u1]) == 2 * (u0 - u1)
    _, vs = us(["u0", "u1", "u2"], 3)
    lam = LambdaDatum.parse(3, 1, "X^3")
    assert determinant_generator([lam, lam], vs).is_zero()


def test_determinant_preconditions():
    _, (u0, u1) = us(["u0", "u1"], 2)
    lam = LambdaDatum.parse(2, 1, "X^2")
    with pytest.raises(PreconditionError):
        determinant_generator([lam, lam], [u0, u1])
    with pytest.raises(PreconditionError):
        determinant_generator([lam], [u0, u0])


@pytest.mark.parametrize("p, n, text", [(2, 1, "X^2"), (3, 1, "X^3"), (2, 2, "X^4")])
def test_fixed_d1(p, n, text):
    _, vs = us(["u0", "u1"], p)
    assert verify_fixed_generators([LambdaDatum.parse(p, n, text)], vs)


def test_fixed_d2():
    _, vs = us(["u0", "u1", "u2"], 3)
    lambdas = [LambdaDatum.parse(3, 1, "X^3"), LambdaDatum.parse(3, 1, "X^6 + 2*X^3")]
    assert verify_fixed_generators(lambdas, vs)


def test_a_single_variable_is_not_fixed():
    _, (u0, u1) = us(["u0", "u1"], 2)
    d = LambdaDatum.parse(2, 1, "X^2")
    assert xi_lambda_apply(d, [u0.variables()[0]], u0) != TruncatedElement.scalar(u0, 2)


def test_equivariance():
    reg = Registry()
    f = parse_expr("u0*u1 + u0^2/(u1 + 1)", reg, GF(2))
    d = LambdaDatum.parse(2, 2, "X^4")
    assert equivariance_check(d, VariableMap.swap("u0", "u1", reg), f)
    assert equivariance_check(d, VariableMap.identity(reg), f)


def test_non_unit():
    reg = Registry()
    with pytest.raises(NonInvertibleError):
        TruncatedElement.B(2, GF(2), reg).inverse()


def test_truncation_mismatch():
    reg, (u,) = us(["u"], 3)
    d = LambdaDatum.parse(3, 1, "X^3")
    with pytest.raises(PreconditionError):
        xi_lambda_apply(d, ["u"], TruncatedElement.scalar(u, 2))
    with pytest.raises(FieldMismatchError):
        xi_lambda_apply(d, ["u"], RationalFunction.var(reg.lookup("u"), GF(2), reg))


@pytest.mark.parametrize("p, n", PN_LIST)
def test_enabling_lemma(p, n):
    rng = random.Random(p * 10 + n)
    for _ in range(3):
        assert enabling_lemma(random_lambda(p, n, rng), Registry())


# -- oracles --------------------------------------------------------------------------


CONST_REG = Registry()


def truncated_const(coeffs, p):
    return TruncatedElement(RationalFunction.constant(c, GF(p), CONST_REG) for c in coeffs)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 6), st.data())
def test_truncated_product_matches_convolution(p, m, data):
    a = data.draw(st.lists(st.integers(0, p - 1), min_size=m, max_size=m))
    b = data.draw(st.lists(st.integers(0, p - 1), min_size=m, max_size=m))
    want = np.convolve(a, b)[:m] % p
    got = truncated_const(a, p) * truncated_const(b, p)
    assert got == truncated_const(want.tolist(), p)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 6), st.data())
def test_truncated_inverse(p, m, data):
    a = data.draw(st.lists(st.integers(0, p - 1), min_size=m, max_size=m))
    a[0] = data.draw(st.integers(1, p - 1))
    x = truncated_const(a, p)
    assert x * x.inverse() == truncated_const([1] + [0] * (m - 1), p)


U0, U1, B = sympy.symbols("u0 u1 B")


def sympy_xi(f, lam, p, q):
    """f(u + lambda(u) B) reduced mod (p, B^q), as a list of coefficients of B^i."""
    lam_of = lambda u: sum(c * u**e for e, c in lam.terms)  # noqa: E731
    g = sympy.expand(f.subs({U0: U0 + lam_of(U0) * B, U1: U1 + lam_of(U1) * B}, simultaneous=True))
    P = sympy.Poly(g, B, U0, U1, modulus=p)
    return [sympy.Poly(sum(c * U0**i * U1**j for (k, i, j), c in P.terms() if k == deg), U0, U1, modulus=p)
            for deg in range(q)]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([(2, 1), (2, 2), (3, 1)]), st.integers(0, 2**32))
def test_xi_matches_sympy_substitution(pn, seed):
    p, n = pn
    rng = random.Random(seed)
    lam = random_lambda(p, n, rng, max_multiple=1)
    f = sum(rng.randrange(p) * U0**rng.randrange(4) * U1**rng.randrange(3) for _ in range(4))
    reg = Registry()
    ours = xi_lambda_apply(lam, [reg.var("u0"), reg.var("u1")], parse_expr(str(f).replace("**", "^"), reg, GF(p)))
    want = sympy_xi(sympy.sympify(f), lam, p, lam.q)
    got = [sympy.Poly(sympy.sympify(str(c).replace("^", "**")), U0, U1, modulus=p) for c in ours.coeffs]
    assert got == want


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(PN_LIST), st.integers(0, 2**32))
def test_homomorphism_property(pn, seed):
    p, n = pn
    d = random_lambda(p, n, random.Random(seed), max_multiple=1)
    assert homomorphism_check(d, seed, trials=1).ok


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([(2, 1), (3, 1), (2, 2)]), st.integers(0, 2**32))
def test_composition_property(pn, seed):
    p, n = pn
    rng = random.Random(seed)
    reg = Registry()
    vars = [reg.var("u0"), reg.var("u1")]
    assert compose_law_verify(random_lambda(p, n, rng), random_lambda(p, n, rng), vars, reg)


def test_verify_lambda():
    report = verify_lambda(3, 1, "X^3 + 2*X^6", ["u0", "u1", "u2"])
    assert report.ok, report.table()
    assert [r.id for r in report.records] == [
        "composition", "invertibility", "enabling-lemma", "fixed-determinant", "homomorphism"]
    with pytest.raises(PreconditionError):
        verify_lambda(2, 1, "X^2", ["u0"])


def test_suite():
    report = run_suite(0)
    assert report.ok, report.table()
