from fractions import Fraction

import pytest

from symfields import Registry, parse_expr
from symfields.errors import DegenerateArgumentsError, PreconditionError
from symfields.invariant_fields import (
    XiChart,
    cross_ratio,
    cross_ratio_orbit,
    ka_additive,
    ka_multiplicative,
    kc,
    kc_generator,
    kc_power,
    kd,
    six_cross_ratios,
    transposition_on_xi,
    verify_group_invariance,
    verify_identity_suite,
    xi_apply,
)
from symfields.perm import VariableMap, apply_substitution


@pytest.fixture
def reg():
    r = Registry()
    r.vars(["t", "u", "v", "w", "x", "y", "z"])
    return r


def test_cross_ratio_values(reg):
    cr = cross_ratio("t", "u", "v", "w", reg)
    assert cr.evaluate({"t": 0, "u": 1, "v": 2, "w": 3}) == Fraction(-1, 3)
    # t = v collapses to 1
    assert cross_ratio("t", "u", "t", "w", reg) == parse_expr("1", reg)


def test_cross_ratio_degenerate(reg):
    with pytest.raises(DegenerateArgumentsError):
        cross_ratio("t", "u", "u", "w", reg)


def test_kc_generator(reg):
    g = kc_generator("u", "v", "w", reg)
    assert g.evaluate({"u": 5, "v": 3, "w": 2}) == 2
    assert apply_substitution(g, VariableMap.swap("u", "w", reg)) == parse_expr("(w-v)/(v-u)", reg)
    assert apply_substitution(g, VariableMap.swap("u", "w", reg)) != g
    with pytest.raises(DegenerateArgumentsError):
        kc_generator("u", "v", "v", reg)


def test_cross_ratio_orbit_is_classical(reg):
    lam = cross_ratio("t", "u", "v", "w", reg)
    orb = cross_ratio_orbit("t", "u", "v", "w", reg)
    assert len(orb) == 6
    assert orb == six_cross_ratios(lam)


@pytest.mark.parametrize("make, group, want", [
    (lambda r: kd("t", "u", "v", "w", r), "mobius", True),
    (lambda r: kc("u", "v", "w", r), "affine", True),
    (lambda r: ka_additive("u", "v", r), "translation", True),
    (lambda r: ka_multiplicative("u", "v", r), "scaling", True),
    (lambda r: kc_power("u", "v", 3, r), "translation", True),
    (lambda r: kc_power("u", "v", 1, r), "scaling", False),
])
def test_group_invariance(make, group, want, reg):
    assert verify_group_invariance(make(reg), group) is want


def test_group_mismatch(reg):
    with pytest.raises(PreconditionError):
        verify_group_invariance(kc("u", "v", "w", reg), "mobius")


def test_xi_chart_values(reg):
    c = XiChart.make("c", ("x", "y"), reg)
    assert xi_apply(c, "u").evaluate({"u": 4, "x": 1, "y": 0}) == 4
    assert xi_apply(c, "x") == parse_expr("1", reg)
    d = XiChart.make("d", ("x", "y", "z"), reg)
    assert xi_apply(d, "y").is_zero()
    with pytest.raises(DegenerateArgumentsError):
        xi_apply(d, "z")
    with pytest.raises(DegenerateArgumentsError):
        XiChart.make("c", ("x", "x"), reg)


def test_transposition_laws(reg):
    chart = XiChart.make("c", ("x", "y"), reg)
    xi_v = parse_expr("xi_v", reg)
    xi_u = parse_expr("xi_u", reg)
    assert transposition_on_xi(chart, ("xu", "u"), xi_v) == xi_v / xi_u
    assert transposition_on_xi(chart, "xy", xi_u) == 1 - xi_u
    assert transposition_on_xi(chart, "id", xi_v * xi_u) == xi_v * xi_u
    # a compound expression in several symbols
    e = (xi_v - xi_u) / (xi_v + 1)
    assert transposition_on_xi(chart, "xy", e) == ((1 - xi_v) - (1 - xi_u)) / ((1 - xi_v) + 1)


def test_identity_suite():
    report = verify_identity_suite()
    assert report.ok, report.table()
    ids = {r.id for r in report.records}
    assert {"I1", "I2", "I3", "I4", "I5", "I6"} <= ids


def test_involution_candidate(reg):
    T = parse_expr("T", reg)
    phi = (T - 2) / (2 * T - 1)
    assert phi.substitute({T.variables()[0]: phi}) == T
