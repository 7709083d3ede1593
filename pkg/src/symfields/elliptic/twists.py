"""Twist data for short forms, the maps beta_{q,a}(b) = b^q - a b and the
small-characteristic class invariants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..errors import PreconditionError, SingularCurveError
from ..kernel import QQ, Field, FiniteField
from ..kernel.linalg import row_echelon
from .weierstrass import WeierstrassQuintuple, is_smooth, j_invariant


def characteristic(field: Field) -> int:
    return getattr(field, "p", 0)


# -- classes modulo n-th powers ----------------------------------------------------


@lru_cache(maxsize=None)
def nth_powers(field: FiniteField, n: int) -> frozenset:
    return frozenset(field.pow(x, n) for x in field.elements() if x)


def _factor(m: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def power_class(gamma, field: Field, n: int):
    """Canonical raw representative of gamma modulo (K^x)^n."""
    return _power_class(field.convert(gamma), field, n)


def _power_class(g, field: Field, n: int):
    if field.is_zero(g):
        raise ValueError("zero has no class modulo n-th powers")
    if field is QQ:
        q = Fraction(g)
        sign = -1 if q < 0 and n % 2 == 0 else 1
        rep = 1
        for part, s in ((abs(q.numerator), 1), (q.denominator, -1)):
            for p, v in _factor(part).items():
                rep *= p ** ((s * v) % n)
        return sign * rep
    return min(field.mul(g, s) for s in nth_powers(field, n))


@dataclass(frozen=True)
class TwistDatum:
    n: int
    gamma: object  # canonical raw representative of the class
    field: Field = QQ

    def __str__(self):
        return f"n={self.n}, gamma={self.field.format(self.gamma)} mod K^x{self.n}"


@dataclass(frozen=True)
class ShortFormInvariants:
    j: object
    twist: TwistDatum


def short_form_invariants(w: WeierstrassQuintuple) -> ShortFormInvariants:
    """(j, n, [gamma]) for y^2 = x^3 + a4 x + a6 in characteristic not 2 or 3.

    n = 2 with gamma = a6/a4 when a4 a6 != 0, n = 4 with gamma = a4 when
    a6 = 0 (j = 1728), n = 6 with gamma = a6 when a4 = 0 (j = 0).
    """
    f = w.field
    if characteristic(f) in (2, 3):
        raise PreconditionError("short forms need characteristic different from 2 and 3")
    if not w.is_short():
        raise PreconditionError(f"{w} is not a short Weierstrass form")
    if not is_smooth(w):
        raise SingularCurveError(f"curve {w} is singular")
    a4, a6 = w.raw[3], w.raw[4]
    if f.is_zero(a6):
        n, gamma = 4, a4
    elif f.is_zero(a4):
        n, gamma = 6, a6
    else:
        n, gamma = 2, f.div(a6, a4)
    return ShortFormInvariants(j_invariant(w), TwistDatum(n, _power_class(gamma, f, n), f))


def isomorphic_by_invariants(w1: WeierstrassQuintuple, w2: WeierstrassQuintuple) -> bool:
    return short_form_invariants(w1) == short_form_invariants(w2)


# -- beta_{q,a} --------------------------------------------------------------------


@dataclass(frozen=True)
class BetaMap:
    """b -> b^q - a b as an F_p-linear map of K, with its image and cokernel."""

    q: int
    a: int
    field: FiniteField
    matrix: tuple  # rows = images of the power basis, in F_p digits
    image_basis: tuple  # raw field elements spanning the image
    rank: int

    @property
    def cokernel_size(self) -> int:
        return self.field.p ** (self.field.k - self.rank)

    def __call__(self, b):
        f = self.field
        b = f.convert(b)
        return f.wrap(f.sub(f.pow(b, self.q), f.mul(self.a, b)))


def _check_q(q: int, field: FiniteField) -> None:
    if not isinstance(field, FiniteField):
        raise PreconditionError("beta maps are defined over finite fields")
    m = q
    while m > 1 and m % field.p == 0:
        m //= field.p
    if q < field.p or m != 1:
        raise PreconditionError(f"q={q} is not a power of the characteristic {field.p}")


def beta_map(q: int, a, field: FiniteField) -> BetaMap:
    _check_q(q, field)
    f = field
    a = f.convert(a)
    basis = [f.from_digits([1 if i == j else 0 for i in range(f.k)]) for j in range(f.k)]
    rows = [f.to_digits(f.sub(f.pow(b, q), f.mul(a, b))) for b in basis]
    prime = FiniteField(f.p) if f.k > 1 else f
    echelon, pivots = row_echelon(rows, prime)
    return BetaMap(q, a, f, tuple(tuple(r) for r in rows),
                   tuple(f.from_digits(r) for r in echelon), len(pivots))


def beta_image(q: int, a, field: FiniteField) -> frozenset:
    """The image by enumeration (raw values)."""
    return _beta_image(q, field.convert(a), field)


@lru_cache(maxsize=None)
def _beta_image(q: int, a, field: FiniteField) -> frozenset:
    _check_q(q, field)
    f = field
    return frozenset(f.sub(f.pow(b, q), f.mul(a, b)) for b in f.elements())


def cokernel_size_by_enumeration(q: int, a, field: FiniteField) -> int:
    return field.order // len(beta_image(q, a, field))


def coset_class(x, image: frozenset, field: FiniteField):
    """Canonical representative of x + image (x raw)."""
    return min(field.add(x, v) for v in image)


# -- characteristic 2 and 3 --------------------------------------------------------


def roots_of_unity(field: FiniteField, n: int) -> list:
    return [x for x in field.elements() if x and field.pow(x, n) == field.one]


def char2_ordinary_class(w: WeierstrassQuintuple):
    """For y^2 + xy = x^3 + a2 x^2 + a6 in characteristic 2: (j, [a2] in A_{2,1}).

    Here j = 1/a6 and a2 is determined up to the image of b -> b^2 + b.
    """
    f = w.field
    if characteristic(f) != 2:
        raise PreconditionError("characteristic 2 only")
    a1, a2, a3, a4, a6 = w.raw
    if a1 != f.one or not f.is_zero(a3) or not f.is_zero(a4) or f.is_zero(a6):
        raise PreconditionError(f"{w} is not of the form y^2 + xy = x^3 + a2 x^2 + a6 with a6 != 0")
    j = j_invariant(w)
    if j != f.wrap(f.inv(a6)):
        raise PreconditionError("j differs from 1/a6")
    return j, coset_class(a2, _beta_image(2, f.one, f), f)


def char3_ordinary_class(w: WeierstrassQuintuple):
    """For y^2 = x^3 + a2 x^2 + a6 with a2 != 0 in characteristic 3: (j, [a2] mod K^x2)."""
    f = w.field
    if characteristic(f) != 3:
        raise PreconditionError("characteristic 3 only")
    a1, a2, a3, a4, a6 = w.raw
    if any(not f.is_zero(v) for v in (a1, a3, a4)) or f.is_zero(a2):
        raise PreconditionError(f"{w} is not of the form y^2 = x^3 + a2 x^2 + a6 with a2 != 0")
    return j_invariant(w), _power_class(a2, f, 2)


def char3_a6_class(a4, a6, field: FiniteField) -> frozenset:
    """{zeta^2 a6 + c^3 + a4 c : zeta^4 = 1, c in K} for y^2 = x^3 + a4 x + a6.

    c -> c^3 + a4 c is beta_{3,-a4}, so this is a union of cosets of its image.
    """
    f = field
    a4, a6 = f.convert(a4), f.convert(a6)
    img = _beta_image(3, f.neg(a4), f)
    return frozenset(f.add(f.mul(f.pow(z, 2), a6), v) for z in roots_of_unity(f, 4) for v in img)


def char2_a4_class(a3, a4, field: FiniteField) -> frozenset:
    """{zeta a4 + c^4 + a3 c : zeta^3 = 1, c in K} for y^2 + a3 y = x^3 + a4 x + a6."""
    f = field
    a3, a4 = f.convert(a3), f.convert(a4)
    img = _beta_image(4, a3, f)
    return frozenset(f.add(f.mul(z, a4), v) for z in roots_of_unity(f, 3) for v in img)


def char2_a6_class(a3, a4, a6, field: FiniteField) -> frozenset:
    """{a6 + a4 d^2 + a3 d^3 + e^2 + a3 e : e in K, 1 + (d^4 + a3 d)/a4 in mu_3}
    for y^2 + a3 y = x^3 + a4 x + a6 with a3, a4 fixed and nonzero."""
    f = field
    a3, a4, a6 = f.convert(a3), f.convert(a4), f.convert(a6)
    if f.is_zero(a3) or f.is_zero(a4):
        raise PreconditionError("a3 and a4 must be nonzero")
    mu3 = set(roots_of_unity(f, 3))
    img = _beta_image(2, a3, f)
    out = set()
    for d in f.elements():
        if f.add(f.one, f.div(f.add(f.pow(d, 4), f.mul(a3, d)), a4)) not in mu3:
            continue
        shift = f.add(f.mul(a4, f.mul(d, d)), f.mul(a3, f.pow(d, 3)))
        out.update(f.add(f.add(a6, shift), v) for v in img)
    return frozenset(out)
