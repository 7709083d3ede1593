"""Weierstrass quintuples, b-invariants, discriminant, j-invariant and the
coordinate-change group H."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from random import Random

from ..errors import DivisionByZeroError, InternalConsistencyError, SingularCurveError
from ..kernel import QQ, Field, Polynomial, Registry
from ..kernel.polynomial import unpack

NAMES = ("a1", "a2", "a3", "a4", "a6")


def b_formulas(a1, a2, a3, a4, a6):
    """(b2, b4, b6, b8, Delta) for any ring elements supporting + - * and ints."""
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    delta = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    return b2, b4, b6, b8, delta


def c4_formula(a1, a2, a3, a4, a6):
    b2, b4, *_ = b_formulas(a1, a2, a3, a4, a6)
    return b2 * b2 - 24 * b4


@dataclass(frozen=True)
class BInvariants:
    b2: object
    b4: object
    b6: object
    b8: object
    delta: object


@dataclass(frozen=True)
class WeierstrassQuintuple:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over ``field`` (raw values)."""

    raw: tuple
    field: Field = QQ

    @classmethod
    def make(cls, coeffs, field: Field = QQ) -> WeierstrassQuintuple:
        coeffs = tuple(coeffs)
        if len(coeffs) != 5:
            raise ValueError("a Weierstrass quintuple has five coefficients (a1, a2, a3, a4, a6)")
        return cls(tuple(field.convert(c) for c in coeffs), field)

    @classmethod
    def short(cls, a4, a6, field: Field = QQ) -> WeierstrassQuintuple:
        return cls.make((0, 0, 0, a4, a6), field)

    @property
    def coeffs(self) -> tuple:
        return tuple(self.field.wrap(c) for c in self.raw)

    def __getattr__(self, name):
        if name in NAMES:
            return self.field.wrap(self.raw[NAMES.index(name)])
        raise AttributeError(name)

    def is_short(self) -> bool:
        f = self.field
        return all(f.is_zero(c) for c in self.raw[:3])

    def __str__(self):
        return f"[{', '.join(self.field.format(c) for c in self.raw)}]"


def b_invariants(w: WeierstrassQuintuple) -> BInvariants:
    return BInvariants(*b_formulas(*w.coeffs))


def discriminant(w: WeierstrassQuintuple):
    return b_invariants(w).delta


def is_smooth(w: WeierstrassQuintuple) -> bool:
    return not w.field.is_zero(w.field.convert(discriminant(w)))


def j_invariant(w: WeierstrassQuintuple):
    """(b2^2 - 24 b4)^3 / Delta."""
    delta = discriminant(w)
    if w.field.is_zero(w.field.convert(delta)):
        raise SingularCurveError(f"curve {w} is singular")
    c4 = c4_formula(*w.coeffs)
    return c4 * c4 * c4 / delta


# -- the group H -------------------------------------------------------------------


@dataclass(frozen=True)
class HTransform:
    """(x, y) -> (x/c^2 + d, y/c^3 + e x + f)."""

    c: object
    d: object = 0
    e: object = 0
    f: object = 0

    def raw(self, field: Field) -> tuple:
        out = tuple(field.convert(v) for v in (self.c, self.d, self.e, self.f))
        if field.is_zero(out[0]):
            raise DivisionByZeroError("c must be nonzero")
        return out

    @classmethod
    def random(cls, rng: Random, field: Field, bound: int = 10) -> HTransform:
        c = field.random(rng, bound)
        while field.is_zero(c):
            c = field.random(rng, bound)
        return cls(*(field.wrap(v) for v in (c, field.random(rng, bound), field.random(rng, bound),
                                             field.random(rng, bound))))


TRANSFORM_VARS = ("c", "d", "e", "f") + NAMES


@lru_cache(maxsize=None)
def transform_formulas() -> tuple:
    """Integer polynomials giving (a1', a2', a3', a4', a6') in c, d, e, f, a_i.

    Substitute x -> x/c^2 + d, y -> y/c^3 + e x + f into the Weierstrass
    equation and multiply by c^6; every monomial x^i y^j carries weight
    2i + 3j <= 6, so with ci = 1/c the factor c^6 * ci^k equals c^(6-k).
    Returned as tuples of (coefficient, exponents over TRANSFORM_VARS).
    """
    reg = Registry()
    names = ("x", "y", "ci") + TRANSFORM_VARS
    V = {n: Polynomial.var(reg.var(n), QQ, reg) for n in names}
    x, y, ci = V["x"], V["y"], V["ci"]
    X = x * ci**2 + V["d"]
    Y = y * ci**3 + V["e"] * x + V["f"]
    a1, a2, a3, a4, a6 = (V[n] for n in NAMES)
    F = Y * Y + a1 * X * Y + a3 * Y - X**3 - a2 * X * X - a4 * X - a6
    n = len(names)
    by_xy: dict[tuple, dict] = {}
    for m, coef in F.terms.items():
        e = unpack(m, n)
        k = e[2]
        if k > 6:
            raise InternalConsistencyError("weight argument failed")
        rest = list(e[3:])
        rest[0] += 6 - k  # c^6 * ci^k = c^(6-k)
        by_xy.setdefault((e[0], e[1]), {})
        slot = by_xy[(e[0], e[1])]
        slot[tuple(rest)] = slot.get(tuple(rest), 0) + coef

    def poly(key, sign):
        return tuple((sign * int(c), m) for m, c in sorted(by_xy.get(key, {}).items()) if c)

    expected = {(0, 2): 1, (3, 0): -1}
    allowed = {(1, 1), (0, 1), (2, 0), (1, 0), (0, 0)} | set(expected)
    for key, terms in by_xy.items():
        if key not in allowed:
            raise InternalConsistencyError(f"unexpected monomial x^{key[0]} y^{key[1]}")
    for key, want in expected.items():
        # y^2 and x^3 keep coefficients 1 and -1 after the rescaling
        if poly(key, 1) != ((want, (0,) * len(TRANSFORM_VARS)),):
            raise InternalConsistencyError("result is not in Weierstrass shape")
    return (poly((1, 1), 1), poly((2, 0), -1), poly((0, 1), 1), poly((1, 0), -1), poly((0, 0), -1))


def _eval_formula(terms, values, field: Field):
    acc = field.zero
    for coef, exps in terms:
        t = field.from_int(coef)
        for v, e in zip(values, exps):
            if e:
                t = field.mul(t, field.pow(v, e))
        acc = field.add(acc, t)
    return acc


def h_transform(w: WeierstrassQuintuple, t: HTransform) -> WeierstrassQuintuple:
    field = w.field
    c, d, e, f = t.raw(field)
    values = (c, d, e, f) + w.raw
    return WeierstrassQuintuple(tuple(_eval_formula(p, values, field) for p in transform_formulas()), field)


def transformed_polynomials(field: Field, registry: Registry | None = None):
    """The formulas as polynomials over ``field`` in fresh variables c, d, e, f, a_i."""
    reg = registry or Registry()
    vs = [reg.var(n) for n in TRANSFORM_VARS]
    out = []
    for terms in transform_formulas():
        data = {}
        for coef, exps in terms:
            full = [0] * (vs[-1].index + 1)
            for v, ex in zip(vs, exps):
                full[v.index] = ex
            data[tuple(full)] = coef
        out.append(Polynomial.from_dict(data, field, reg))
    return out, vs
