"""Multivariate gcd: recursive univariate view, content/primitive-part split and
subresultant remainder sequences, with an evaluation shortcut that proves
coprimality cheaply in the common case."""

from __future__ import annotations

import math
import random

from ..errors import FieldMismatchError
from .polynomial import BITS, SLOT, Polynomial, mono_min

_rng = random.Random(0x5EED)


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd (graded-lex leading coefficient 1); gcd(0, 0) = 0."""
    if p.field is not q.field or p.registry is not q.registry:
        raise FieldMismatchError(f"gcd over {p.field} and {q.field}")
    if p.field.characteristic == 0:
        p, q = _integral(p), _integral(q)
    return _gcd(p, q).monic()


def _integral(p: Polynomial) -> Polynomial:
    """Scale a rational polynomial to integer coefficients (a unit multiple)."""
    den = 1
    for c in p.terms.values():
        if type(c) is not int:
            den = math.lcm(den, c.denominator)
    if den == 1:
        return p
    return p._new({m: int(c * den) for m, c in p.terms.items()})


def poly_lcm(p: Polynomial, q: Polynomial) -> Polynomial:
    if not p or not q:
        return p._new({})
    return (p * q.divexact(poly_gcd(p, q))).monic()


def content_in(p: Polynomial, var: int) -> Polynomial:
    """gcd of the coefficients of ``p`` viewed as a polynomial in ``var``."""
    return _gcd_list(list(p.coefficients_in(var).values()), p).monic()


def primitive_part(p: Polynomial, var: int) -> Polynomial:
    if not p:
        return p
    return p.divexact(content_in(p, var))


def _one(p: Polynomial) -> Polynomial:
    return p._new({0: p.field.one})


def _gcd_list(polys, like: Polynomial) -> Polynomial:
    polys = sorted((q for q in polys if q), key=len)
    if not polys:
        return like._new({})
    g = polys[0]
    for q in polys[1:]:
        if g.is_constant():
            return _one(like)
        g = _gcd(g, q)
    return g


def _content_over(p: Polynomial, var_set) -> Polynomial:
    """gcd of the coefficients of ``p`` regarded as a polynomial in the variables ``var_set``."""
    mask = 0
    for i in var_set:
        mask |= SLOT << (BITS * i)
    groups: dict[int, dict] = {}
    for m, c in p.terms.items():
        key = m & mask
        groups.setdefault(key, {})[m - key] = c
    return _gcd_list([p._new(t) for t in groups.values()], p)


def _gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """A gcd up to a unit factor."""
    if not a.terms:
        return b
    if not b.terms:
        return a
    if a.is_constant() or b.is_constant():
        return _one(a)
    if a.terms == b.terms:
        return a
    ma, mb = a.monomial_content(), b.monomial_content()
    gm = mono_min(ma, mb)
    mono = a._new({gm: a.field.one})
    if ma:
        a = a.div_monomial(ma)
    if mb:
        b = b.div_monomial(mb)
    if a.is_constant() or b.is_constant():
        return mono

    va, vb = set(a.variables()), set(b.variables())
    if va - vb:
        a = _content_over(a, va - vb)
        if a.is_constant():
            return mono
        va = set(a.variables())
    if vb - va:
        b = _content_over(b, vb - va)
        if b.is_constant():
            return mono
        vb = set(b.variables())
    shared = va & vb
    if not shared:
        return mono
    if va != vb:
        return mono * _gcd(a, b)

    absent = _absent_variables(a, b, shared)
    if absent == shared:
        return mono
    if absent:
        # the gcd lives in the remaining variables: pass to contents over ``absent``
        return mono * _gcd(_content_over(a, absent), _content_over(b, absent))

    x = min(shared, key=lambda i: (max(a.degree(i), b.degree(i)), min(a.degree(i), b.degree(i)), i))
    ca = _gcd_list(list(a.coefficients_in(x).values()), a)
    cb = _gcd_list(list(b.coefficients_in(x).values()), b)
    if not ca.is_constant():
        a = a.divexact(ca)
    if not cb.is_constant():
        b = b.divexact(cb)
    c = _gcd(ca, cb)
    g = _subresultant_pp(a, b, x)
    return mono * c * g


def _subresultant_pp(a: Polynomial, b: Polynomial, x: int) -> Polynomial:
    """Primitive gcd of two polynomials primitive w.r.t. ``x``."""
    if a.degree(x) < b.degree(x):
        a, b = b, a
    g = h = _one(a)
    while True:
        delta = a.degree(x) - b.degree(x)
        r = a.prem(b, x)
        if not r.terms:
            break
        if r.degree(x) == 0:
            return _one(a)
        a = b
        div = g * h**delta if delta else g
        b = r.divexact(div)
        if b is None:
            raise ArithmeticError("subresultant division was not exact")
        g = a.coefficient_in(x, a.degree(x))
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = (g**delta).divexact(h ** (delta - 1))
    cont = _gcd_list(list(b.coefficients_in(x).values()), b)
    return b if cont.is_constant() else b.divexact(cont)


# -- coprimality certificate ------------------------------------------------

def _absent_variables(a: Polynomial, b: Polynomial, shared) -> set:
    """Shared variables that provably do not occur in gcd(a, b).

    For a variable x, evaluate the others at a random point that keeps the
    x-leading coefficient of ``a`` nonzero.  Any common factor keeps its
    x-degree there, so a constant univariate gcd certifies x-degree 0.
    Over Q the images are taken modulo a large prime (Gauss's lemma keeps the
    argument valid), which avoids coefficient growth in the Euclidean steps.
    """
    f = a.field
    if f.order is not None and f.order < 5:
        return set()
    if f.characteristic == 0:
        f = _MODP
    out = set()
    for x in shared:
        da = a.degree(x)
        for _ in range(2):
            point = {i: _random_value(f) for i in shared if i != x}
            ua = _univariate(a, x, point, f)
            if ua is None or len(ua) - 1 != da:
                continue
            ub = _univariate(b, x, point, f)
            if not ub:
                continue
            if len(_uni_gcd(f, ua, ub)) == 1:
                out.add(x)
            break
    return out


class _ModP:
    """Just enough of a field interface for the certificate over Z/P."""

    P = 2**61 - 1
    order = P
    characteristic = P
    zero = 0

    def convert(self, c):
        if type(c) is int:
            return c % self.P
        if c.denominator % self.P == 0:
            return None
        return c.numerator * pow(c.denominator, -1, self.P) % self.P

    def add(self, a, b):
        return (a + b) % self.P

    def sub(self, a, b):
        return (a - b) % self.P

    def mul(self, a, b):
        return a * b % self.P

    def pow(self, a, e):
        return pow(a, e, self.P)

    def inv(self, a):
        return pow(a, -1, self.P)

    def is_zero(self, a):
        return a == 0


_MODP = _ModP()


def _random_value(f):
    if f.order is None:
        return f.from_int(_rng.randint(-97, 97))
    return _rng.randrange(f.order)


def _univariate(p: Polynomial, x: int, point: dict, f=None) -> list | None:
    """p at ``point`` as a dense coefficient list in x, or None if a
    coefficient cannot be mapped into ``f``."""
    if f is None:
        f = p.field
    conv = f.convert if f is _MODP else None
    shift = BITS * x
    coeffs: dict[int, object] = {}
    powers: dict = {}
    for m, c in p.terms.items():
        e = (m >> shift) & SLOT
        rest = m - (e << shift)
        v = c
        if conv is not None:
            v = conv(c)
            if v is None:
                return None
        i = 0
        while rest:
            ei = rest & SLOT
            if ei:
                key = (i, ei)
                pv = powers.get(key)
                if pv is None:
                    pv = powers[key] = f.pow(point[i], ei)
                v = f.mul(v, pv)
            rest >>= BITS
            i += 1
        coeffs[e] = f.add(coeffs.get(e, f.zero), v)
    n = max(coeffs) + 1 if coeffs else 0
    out = [coeffs.get(i, f.zero) for i in range(n)]
    while out and f.is_zero(out[-1]):
        out.pop()
    return out


def _uni_gcd(f, a: list, b: list) -> list:
    while b:
        a, b = b, _uni_rem(f, a, b)
    return a


def _uni_rem(f, a: list, b: list) -> list:
    a = list(a)
    inv = f.inv(b[-1])
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = f.mul(a[-1], inv)
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] = f.sub(a[shift + i], f.mul(c, bc))
        while a and f.is_zero(a[-1]):
            a.pop()
    return a
