import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symfields import Registry, parse_expr
from symfields.errors import NotABijectionError, NotClosedError, ParseError
from symfields.invariant_fields import cross_ratio
from symfields.perm import (
    VariableMap,
    apply_substitution,
    check_closed,
    is_invariant,
    orbit,
    symmetric_group,
    transpositions,
)

NAMES = ["t", "u", "v", "w"]


@pytest.fixture
def reg():
    r = Registry()
    r.vars(NAMES + ["x", "y"])
    return r


def test_swap_examples(reg):
    f = parse_expr("(u-v)/(v-w)", reg)
    assert apply_substitution(f, VariableMap.swap("u", "w", reg)) == parse_expr("(w-v)/(v-u)", reg)
    xi = parse_expr("(v-y)/(x-y)", reg)
    assert apply_substitution(xi, VariableMap.swap("x", "u", reg)) == parse_expr("(v-y)/(u-y)", reg)
    c = parse_expr("7/3", reg)
    assert apply_substitution(c, VariableMap.swap("u", "v", reg)) == c


def test_invariance_examples(reg):
    s3 = transpositions(["u", "v", "w"], reg)
    assert is_invariant(parse_expr("u+v+w", reg), s3)
    assert not is_invariant(parse_expr("u-v", reg), [VariableMap.swap("u", "v", reg)])
    klein = VariableMap.swap("t", "v", reg) * VariableMap.swap("u", "w", reg)
    assert is_invariant(cross_ratio("t", "u", "v", "w", reg), [klein])


def test_cross_ratio_stabilizer_is_klein_four(reg):
    cr = cross_ratio("t", "u", "v", "w", reg)
    stab = [s for s in symmetric_group(NAMES, reg) if apply_substitution(cr, s) == cr]
    assert len(stab) == 4


def test_orbits(reg):
    f = parse_expr("u-v", reg)
    assert orbit(f, symmetric_group(["u", "v"], reg)) == {f, -f}
    assert len(orbit(cross_ratio("t", "u", "v", "w", reg), symmetric_group(NAMES, reg))) == 6
    assert orbit(parse_expr("u*v*w", reg), symmetric_group(["u", "v", "w"], reg)) == {parse_expr("u*v*w", reg)}


def test_non_closed_orbit_rejected(reg):
    with pytest.raises(NotClosedError):
        orbit(parse_expr("u", reg), [VariableMap.identity(reg), VariableMap.from_cycles([["u", "v", "w"]], reg)])
    check_closed(symmetric_group(["u", "v"], reg))


def test_non_injective_map_rejected(reg):
    with pytest.raises(NotABijectionError):
        VariableMap({"u": "w", "v": "w"}, reg)


def test_cycle_parsing(reg):
    s = VariableMap.parse("(u v)(w t)", reg)
    assert s == VariableMap.swap("u", "v", reg) * VariableMap.swap("w", "t", reg)
    assert VariableMap.parse("id", reg) == VariableMap.identity(reg)
    with pytest.raises(ParseError):
        VariableMap.parse("(u v", reg)
    with pytest.raises(KeyError):
        VariableMap.parse("(u q)", reg)


perms = st.permutations(NAMES)
exprs = st.sampled_from(["(t-u)/(v+w)", "t*u + v^2", "(t - 2*w)/(u*v + 1)", "t/u - w/v", "3"])


@settings(max_examples=50, deadline=None)
@given(exprs, perms, perms)
def test_action_law(text, p1, p2):
    reg = Registry()
    reg.vars(NAMES)
    f = parse_expr(text, reg)
    s = VariableMap(dict(zip(NAMES, p1)), reg)
    t = VariableMap(dict(zip(NAMES, p2)), reg)
    assert apply_substitution(f, s * t) == apply_substitution(apply_substitution(f, t), s)
    assert apply_substitution(f, VariableMap.identity(reg)) == f
    assert apply_substitution(apply_substitution(f, s), s.inverse()) == f


@settings(max_examples=40, deadline=None)
@given(exprs, exprs, perms)
def test_substitution_is_a_homomorphism(a, b, p):
    reg = Registry()
    reg.vars(NAMES)
    f, g = parse_expr(a, reg), parse_expr(b, reg)
    s = VariableMap(dict(zip(NAMES, p)), reg)

    def act(h):
        return apply_substitution(h, s)

    assert act(f + g) == act(f) + act(g)
    assert act(f * g) == act(f) * act(g)
    if not g.is_zero():
        assert act(f / g) == act(f) / act(g)


def test_symmetric_group_size(reg):
    assert len(symmetric_group(NAMES, reg)) == 24
    assert len(transpositions(NAMES, reg)) == len(list(itertools.combinations(NAMES, 2)))
