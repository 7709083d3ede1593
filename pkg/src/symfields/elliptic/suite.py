"""Verification suite for the elliptic-curve invariants."""

from __future__ import annotations

import random
from fractions import Fraction

from ..errors import SingularCurveError
from ..kernel import GF, QQ, Field, FiniteField, Polynomial, Registry
from ..report import Check, Outcome, Report, equal, run_checks
from .isomorphism import isomorphic_over, orbit, short_orbit, smooth_short_forms
from .reduction import char2_delta, char_reduction_consistency
from .twists import (
    _power_class,
    beta_map,
    char2_a4_class,
    char2_a6_class,
    char2_ordinary_class,
    char3_a6_class,
    char3_ordinary_class,
    cokernel_size_by_enumeration,
    short_form_invariants,
)
from .weierstrass import (
    NAMES,
    HTransform,
    WeierstrassQuintuple,
    b_formulas,
    b_invariants,
    discriminant,
    h_transform,
    is_smooth,
    j_invariant,
)

ANCHOR = "Prop. isotriv_elliptic_curves"


def b8_relation() -> Outcome:
    reg = Registry()
    a = [Polynomial.var(reg.var(n), QQ, reg) for n in NAMES]
    b2, b4, b6, b8, _ = b_formulas(*a)
    return equal(4 * b8, b2 * b6 - b4 * b4)


def j_invariance(field: Field, trials: int = 100, seed: int = 0) -> Outcome:
    """j(h(W)) = j(W) for seeded random smooth W and random h."""
    rng = random.Random(seed)
    done = 0
    while done < trials:
        w = WeierstrassQuintuple(tuple(field.random(rng, 10) for _ in NAMES), field)
        if not is_smooth(w):
            continue
        t = HTransform.random(rng, field)
        lhs, rhs = j_invariant(h_transform(w, t)), j_invariant(w)
        if lhs != rhs:
            return Outcome(False, str(lhs), str(rhs), f"W={w}, t={t}")
        done += 1
    return Outcome(True, detail=f"{trials} transforms over {field}")


def exhaustive_agreement(field: FiniteField) -> Outcome:
    """Brute-force isomorphism versus (j, n, [gamma]) on all smooth short forms."""
    curves = smooth_short_forms(field)
    inv = {w.raw: short_form_invariants(w) for w in curves}
    pairs = bad = 0
    for w1 in curves:
        reachable = short_orbit(w1)
        for w2 in curves:
            pairs += 1
            if ((w2.raw[3], w2.raw[4]) in reachable) != (inv[w1.raw] == inv[w2.raw]):
                bad += 1
    return Outcome(bad == 0, f"{bad} disagreements", "0", f"{len(curves)} curves, {pairs} pairs over {field}")


def beta_agreement(field: FiniteField) -> Outcome:
    bad = []
    for q in (field.p, field.p**2):
        for a in field.elements():
            got = beta_map(q, field.wrap(a), field).cokernel_size
            want = cokernel_size_by_enumeration(q, field.wrap(a), field)
            if got != want:
                bad.append((q, field.format(a), got, want))
    return Outcome(not bad, str(bad), "[]", f"all (q, a) over {field}")


def _class_agreement(curves, key) -> Outcome:
    """Brute-force isomorphism classes versus equality of ``key``."""
    orbits = {w.raw: orbit(w) for w in curves}
    bad = sum((w2.raw in orbits[w1.raw]) != (key(w1) == key(w2)) for w1 in curves for w2 in curves)
    return Outcome(bad == 0, f"{bad} disagreements", "0", f"{len(curves)} curves")


def char2_ordinary_agreement(field: FiniteField) -> Outcome:
    els = list(field.elements())
    curves = [WeierstrassQuintuple((1, a2, 0, 0, a6), field) for a2 in els for a6 in els if a6]
    return _class_agreement(curves, char2_ordinary_class)


def char3_ordinary_agreement(field: FiniteField) -> Outcome:
    els = list(field.elements())
    curves = [WeierstrassQuintuple((0, a2, 0, 0, a6), field) for a2 in els if a2 for a6 in els]
    return _class_agreement([w for w in curves if is_smooth(w)], char3_ordinary_class)


def _fixed_slice_agreement(curves, fixed: slice, slot: int, predicted) -> Outcome:
    """For curves sharing the coefficients in ``fixed``, the coefficient at
    ``slot`` reachable by isomorphism equals the predicted set."""
    bad = 0
    for w in curves:
        reach = {r[slot] for r in orbit(w) if r[:slot] == w.raw[:slot] and r[fixed] == w.raw[fixed]}
        if reach != set(predicted(w)):
            bad += 1
    return Outcome(bad == 0, f"{bad} disagreements", "0", f"{len(curves)} curves")


def char3_supersingular_agreement(field: FiniteField) -> Outcome:
    els = list(field.elements())
    curves = [w for w in (WeierstrassQuintuple((0, 0, 0, a4, a6), field) for a4 in els for a6 in els)
              if is_smooth(w)]
    wrap = field.wrap
    return _fixed_slice_agreement(curves, slice(0, 4), 4,
                                  lambda w: char3_a6_class(wrap(w.raw[3]), wrap(w.raw[4]), field))


def char2_supersingular_agreement(field: FiniteField, which: str) -> Outcome:
    els = list(field.elements())
    curves = [w for w in (WeierstrassQuintuple((0, 0, a3, a4, a6), field)
                          for a3 in els if a3 for a4 in els for a6 in els) if is_smooth(w)]
    wrap = field.wrap
    if which == "a4":
        # a3 fixed; the a6 coefficient is free
        def reach(w):
            return {r[3] for r in orbit(w) if r[:3] == w.raw[:3]}

        bad = sum(reach(w) != set(char2_a4_class(wrap(w.raw[2]), wrap(w.raw[3]), field)) for w in curves)
        return Outcome(bad == 0, f"{bad} disagreements", "0", f"{len(curves)} curves")
    curves = [w for w in curves if w.raw[3]]
    return _fixed_slice_agreement(curves, slice(0, 4), 4,
                                  lambda w: char2_a6_class(*(wrap(v) for v in w.raw[2:]), field))


def _raises(fn, exc) -> bool:
    try:
        fn()
    except exc:
        return True
    return False


def _sfi(a4, a6, field=QQ):
    s = short_form_invariants(WeierstrassQuintuple.short(a4, a6, field))
    return s.j, s.twist.n, s.twist.field.wrap(s.twist.gamma)


def formula_checks() -> list[Check]:
    W = WeierstrassQuintuple.make
    F2, F5, F7 = GF(2), GF(5), GF(7)
    x3mx = W((0, 0, 0, -1, 0))
    checks = [
        Check("b8-relation", f"{ANCHOR}: 4 b8 = b2 b6 - b4^2", b8_relation),
        Check("b-invariants-x3-x", f"{ANCHOR}: b-invariants",
              lambda: equal(b_invariants(x3mx), b_invariants(x3mx).__class__(0, -2, 0, -1, 64))),
        Check("delta-x3+1", f"{ANCHOR}: discriminant", lambda: equal(discriminant(W((0, 0, 0, 0, 1))), -432)),
        Check("b-invariants-zero", f"{ANCHOR}: b-invariants",
              lambda: all(v == 0 for v in vars(b_invariants(W((0,) * 5))).values())),
        Check("j-x3-x", f"{ANCHOR}: j = (b2^2 - 24 b4)^3 / Delta", lambda: equal(j_invariant(x3mx), 1728)),
        Check("j-x3+1", f"{ANCHOR}: j", lambda: equal(j_invariant(W((0, 0, 0, 0, 1))), 0)),
        Check("j-char2", f"{ANCHOR}: j = a1^12/Delta in characteristic 2",
              lambda: (lambda w: j_invariant(w) == 0 and discriminant(w) == 1
                       and char2_delta(*w.coeffs) == 1)(W((0, 0, 1, 0, 0), F2))),
        Check("j-singular", f"{ANCHOR}: j needs Delta != 0",
              lambda: _raises(lambda: j_invariant(W((0, 0, 0, 0, 0))), SingularCurveError)),
        Check("h-transform-scaling", f"{ANCHOR}: (x, y) -> (x/c^2 + d, y/c^3 + ex + f)",
              lambda: equal(h_transform(W((0, 0, 0, 1, 0)), HTransform(2)), W((0, 0, 0, 16, 0)))),
        Check("h-transform-identity", f"{ANCHOR}: identity of H",
              lambda: (lambda w: h_transform(w, HTransform(1)) == w)(W((1, 2, 3, 4, 5)))),
        Check("short-form-1728", f"{ANCHOR}: case n_E = 4, gamma = a4",
              lambda: equal(_sfi(1, 0), (1728, 4, 1))),
        Check("short-form-0", f"{ANCHOR}: case n_E = 6, gamma = a6", lambda: equal(_sfi(0, 1), (0, 6, 1))),
        Check("short-form-generic", f"{ANCHOR}: case n_E = 2, gamma = a6/a4",
              lambda: equal(_sfi(1, 1), (Fraction(6912, 31), 2, 1))),
        Check("short-form-rational-class", f"{ANCHOR}: gamma mod K^x2 over Q",
              lambda: equal(_power_class(Fraction(-12, 5), QQ, 2), -15)),
        Check("char2-reduction", f"{ANCHOR}: characteristic 2 discriminant", lambda: char_reduction_consistency(2)),
        Check("char3-reduction", f"{ANCHOR}: characteristic 3 j-invariant", lambda: char_reduction_consistency(3)),
        Check("char2-reduction-negative-control", f"{ANCHOR}: the checker rejects a perturbed formula",
              lambda: not char_reduction_consistency(
                  2, delta_formula=lambda a1, a2, a3, a4, a6: char2_delta(a1, a2, a3, a4, a6) + a1**6)),
        Check("beta-F9-q3-a1", f"{ANCHOR}: cokernel of b -> b^q - a b",
              lambda: equal(beta_map(3, 1, GF(3, 2)).cokernel_size, 3)),
        Check("beta-F4-q4-a1", f"{ANCHOR}: cokernel of b -> b^q - a b",
              lambda: equal(beta_map(4, 1, GF(2, 2)).cokernel_size, 4)),
        Check("beta-F4-q4-a0", f"{ANCHOR}: cokernel of b -> b^q - a b",
              lambda: equal(beta_map(4, 0, GF(2, 2)).cokernel_size, 1)),
        Check("iso-witness-F7", f"{ANCHOR}: isomorphism by H",
              lambda: (lambda w, t: isomorphic_over(F7, w, h_transform(w, t)) is not None)(
                  W((1, 2, 3, 4, 5), F7), HTransform(F7.wrap(3), F7.wrap(1), F7.wrap(4), F7.wrap(6)))),
        Check("iso-twist-F5", f"{ANCHOR}: gamma class mod K^x4 separates twists",
              lambda: (lambda a, b: (isomorphic_over(F5, a, b) is None)
                       == (short_form_invariants(a) != short_form_invariants(b)))(
                  WeierstrassQuintuple.short(1, 0, F5), WeierstrassQuintuple.short(2, 0, F5))),
        Check("iso-different-j-F7", f"{ANCHOR}: j is an isomorphism invariant",
              lambda: isomorphic_over(F7, WeierstrassQuintuple.short(1, 0, F7),
                                      WeierstrassQuintuple.short(0, 1, F7)) is None),
    ]
    return checks


def invariance_checks(seed: int = 0) -> list[Check]:
    fields = (QQ, GF(5), GF(7), GF(101))
    return [Check(f"j-invariance-{f}", f"{ANCHOR}: j is H-invariant", lambda f=f: j_invariance(f, 100, seed))
            for f in fields]


def enumeration_checks(primes=(5, 7, 11, 13)) -> list[Check]:
    checks = [Check(f"exhaustive-F{p}", f"{ANCHOR}: (j, gamma class) determines the curve",
                    lambda p=p: exhaustive_agreement(GF(p))) for p in primes]
    checks += [Check(f"beta-enumeration-F{p**k}", f"{ANCHOR}: cokernel of beta_(q,a)",
                     lambda p=p, k=k: beta_agreement(GF(p, k))) for p, k in ((2, 2), (2, 3), (3, 2), (3, 3))]
    return checks


def small_characteristic_checks() -> list[Check]:
    checks = []
    for k in (1, 2, 3):
        K = GF(2, k)
        checks.append(Check(f"char2-ordinary-F{K.order}", f"{ANCHOR}: j and [a2] in A_(2,1) determine the curve",
                            lambda K=K: char2_ordinary_agreement(K)))
        checks.append(Check(f"char2-a4-class-F{K.order}", f"{ANCHOR}: class of a4 is zeta a4 + c^4 + a3 c",
                            lambda K=K: char2_supersingular_agreement(K, "a4")))
        checks.append(Check(f"char2-a6-class-F{K.order}", f"{ANCHOR}: class of a6 in A_(2,a3)",
                            lambda K=K: char2_supersingular_agreement(K, "a6")))
    for k in (1, 2):
        K = GF(3, k)
        checks.append(Check(f"char3-ordinary-F{K.order}", f"{ANCHOR}: j and a2 mod K^x2 determine the curve",
                            lambda K=K: char3_ordinary_agreement(K)))
        checks.append(Check(f"char3-a6-class-F{K.order}", f"{ANCHOR}: class of a6 is zeta^2 a6 + c^3 + a4 c",
                            lambda K=K: char3_supersingular_agreement(K)))
    return checks


def run_suite(seed: int = 0, exhaustive: bool = True) -> Report:
    checks = formula_checks() + invariance_checks(seed)
    if exhaustive:
        checks += enumeration_checks() + small_characteristic_checks()
    return run_checks("ec", checks)
