import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from symfields import Registry
from symfields.divdiff import (
    DivDiffContext,
    GnElement,
    composition_law,
    div_diff,
    gn_apply,
    node_symmetry,
    numeric_example,
    spot_check,
    verify_gn_invariants,
)


def test_base_case_and_one_unfolding():
    ctx = DivDiffContext.make(1)
    assert div_diff(ctx, 0) == ctx.B("u")
    assert div_diff(ctx, 1) == (ctx.B("u") - ctx.B("x1")) / (ctx.A("u") - ctx.A("x1"))


def test_numeric_example():
    assert numeric_example().ok
    ctx = DivDiffContext.make(2)
    vals = {"A_x1": 0, "A_x2": 1, "A_u": 2, "B_x1": 5, "B_x2": 7, "B_u": 11}
    assert ctx.div_diff(2).evaluate(vals) == 1
    assert ctx.div_diff(1).evaluate(vals) == 3


def test_out_of_range():
    ctx = DivDiffContext.make(2)
    with pytest.raises(ValueError):
        ctx.div_diff(3)
    with pytest.raises(ValueError):
        DivDiffContext.make(-1)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.data())
def test_matches_newton_interpolation(n, data):
    xs = data.draw(st.lists(st.integers(-20, 20), min_size=n + 1, max_size=n + 1, unique=True))
    ys = data.draw(st.lists(st.integers(-20, 20), min_size=n + 1, max_size=n + 1))
    ctx = DivDiffContext.make(n)
    points = list(ctx.nodes) + ["u"]
    vals = {}
    for w, a, b in zip(points, xs, ys):
        vals[f"A_{w}"], vals[f"B_{w}"] = a, b
    t = sympy.Symbol("t")
    lead = sympy.Poly(sympy.interpolate(list(zip(xs, ys)), t), t).coeff_monomial(t**n)
    assert ctx.div_diff(n).evaluate(vals) == sympy.Rational(lead)


def test_n1_constants_cancel():
    ctx = DivDiffContext.make(1)
    g = GnElement.symbolic(1, ctx.registry)
    assert gn_apply(g, ctx.div_diff(1), ctx) == ctx.div_diff(1)


def test_n0_fixes_b():
    ctx = DivDiffContext.make(0)
    g = GnElement.symbolic(0, ctx.registry)
    assert gn_apply(g, ctx.B("u"), ctx) == ctx.B("u")
    assert gn_apply(g, ctx.a_prime("u"), ctx) == ctx.a_prime("u")


def test_a_is_not_fixed():
    # only differences of A are invariant
    ctx = DivDiffContext.make(1)
    g = GnElement.symbolic(1, ctx.registry)
    assert gn_apply(g, ctx.A("u"), ctx) != ctx.A("u")
    assert gn_apply(g, ctx.div_diff(0), ctx) != ctx.div_diff(0)


@pytest.mark.parametrize("n", range(5))
def test_symbolic_fixedness(n):
    report = verify_gn_invariants(n, 2)
    assert report.ok, report.table()
    assert len(report.records) == 6


@pytest.mark.parametrize("s", [1, 2, 3])
def test_node_symmetry(s):
    assert node_symmetry(s)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_composition_law(n):
    assert composition_law(n).ok


def test_composition_order_matters():
    ctx = DivDiffContext.make(2, ("u",))
    reg = ctx.registry
    g = GnElement.concrete(1, [0, 1], reg)
    h = GnElement.concrete(2, [1, 0], reg)
    assert g.compose(h) != h.compose(g)
    f = ctx.B("u")
    assert gn_apply(g, gn_apply(h, f, ctx), ctx) == gn_apply(g.compose(h), f, ctx)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 2**32))
def test_spot_check(seed):
    assert spot_check(2, seed, trials=2)


def test_dimension_count():
    for n in range(5):
        g = GnElement.symbolic(n, Registry())
        assert 1 + len(g.p) == n + 1
