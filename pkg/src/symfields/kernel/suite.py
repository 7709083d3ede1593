"""Self-checks of the exact kernel: canonical forms, print/parse round trips,
evaluation as a homomorphism, and finite-field arithmetic against a naive
polynomial-remainder model."""

from __future__ import annotations

import itertools
import random

from ..errors import PoleError
from ..report import Check, Outcome, Report, run_checks
from .expr import parse_expr, print_canonical
from .fields import GF, QQ, Field, FiniteField
from .gcd import poly_gcd
from .polynomial import Polynomial
from .rational import RationalFunction
from .registry import Registry

FIELDS = (QQ, GF(7), GF(3, 2), GF(101))
TABLE_FIELDS = ((2, 2), (2, 3), (3, 2), (3, 3))


def random_polynomial(rng: random.Random, field: Field, registry: Registry, variables,
                      terms: int = 4, degree: int = 3) -> Polynomial:
    """At most ``terms`` terms of total degree <= ``degree``."""
    data = {}
    for _ in range(rng.randint(1, terms)):
        e = [0] * (max(v.index for v in variables) + 1)
        for _ in range(rng.randint(0, degree)):
            e[rng.choice(variables).index] += 1
        data[tuple(e)] = field.wrap(field.random(rng, 9))
    return Polynomial.from_dict(data, field, registry)


def _instance(rng: random.Random, field: Field, registry: Registry, variables):
    while True:
        p, q, r = (random_polynomial(rng, field, registry, variables) for _ in range(3))
        if q.terms and r.terms:
            return p, q, r


def _is_canonical(f: RationalFunction) -> bool:
    if not f.num.terms:
        return f.den.is_one()
    return f.den.leading_coefficient() == f.field.one and poly_gcd(f.num, f.den).is_one()


def _point(rng: random.Random, field: Field, variables) -> dict:
    return {v: field.wrap(field.random(rng, 20)) for v in variables}


def instance_check(i: int, seed: int = 0) -> Outcome:
    rng = random.Random(f"{seed}:{i}")
    field = FIELDS[i % len(FIELDS)]
    reg = Registry()
    variables = reg.vars(["x", "y", "z", "w"])
    p, q, r = _instance(rng, field, reg, variables)
    f = RationalFunction(p, q)
    # soundness: cancelling a common factor gives the same canonical form
    g = RationalFunction(p * r, q * r)
    if g != f or not _is_canonical(f):
        return Outcome(False, str(g), str(f), f"instance {i}: common factor not cancelled")
    h = RationalFunction(r, q + r) if (q + r).terms else RationalFunction(r)
    if (f + h) - h != f or (not h.is_zero() and (f * h) / h != f):
        return Outcome(False, detail=f"instance {i}: field axioms over {field}")
    # round trip
    for e in (f, h, f * h):
        back = parse_expr(print_canonical(e), reg, field)
        if back != e:
            return Outcome(False, str(back), str(e), f"instance {i}: round trip")
    # evaluation homomorphism at a point that is not a pole
    for _ in range(5):
        pt = _point(rng, field, variables)
        try:
            fv, hv = f.evaluate(pt), h.evaluate(pt)
        except PoleError:
            continue
        if (f + h).evaluate(pt) != fv + hv or (f * h).evaluate(pt) != fv * hv:
            return Outcome(False, detail=f"instance {i}: evaluation is not a homomorphism")
        if hv != 0 and (f / h).evaluate(pt) != fv / hv:
            return Outcome(False, detail=f"instance {i}: evaluation of a quotient")
        break
    return Outcome(True)


def random_instances(n: int = 1000, seed: int = 0) -> Outcome:
    for i in range(n):
        out = instance_check(i, seed)
        if not out.ok:
            return out
    return Outcome(True, detail=f"{n} instances over {', '.join(map(str, FIELDS))}")


# -- finite fields against a naive model --------------------------------------------


def _naive_mul(a: list[int], b: list[int], modulus, p: int) -> list[int]:
    k = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    # long division by the monic modulus
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for t in range(k + 1):
                prod[d - k + t] = (prod[d - k + t] - c * modulus[t]) % p
    return (prod + [0] * k)[:k]


def field_tables(p: int, k: int) -> Outcome:
    F: FiniteField = GF(p, k)
    els = list(F.elements())
    if len(els) != p**k:
        return Outcome(False, str(len(els)), str(p**k), "element count")
    # irreducibility of the modulus: degree <= 3 and no root
    mod = F.modulus
    for x in range(p):
        if sum(c * x**i for i, c in enumerate(mod)) % p == 0:
            return Outcome(False, detail=f"modulus {mod} has root {x}")
    digits = {a: F.to_digits(a) for a in els}
    for a, b in itertools.product(els, repeat=2):
        want_add = [(x + y) % p for x, y in zip(digits[a], digits[b])]
        if F.to_digits(F.add(a, b)) != want_add:
            return Outcome(False, detail=f"{a} + {b}")
        if F.to_digits(F.mul(a, b)) != _naive_mul(digits[a], digits[b], mod, p):
            return Outcome(False, detail=f"{a} * {b}")
    for a in els[1:]:
        if F.mul(a, F.inv(a)) != F.one:
            return Outcome(False, detail=f"inverse of {a}")
    reg = Registry()
    for a in els:
        back = parse_expr(F.format(a), reg, F)
        if not back.is_constant() or F.convert(back.constant_value()) != a:
            return Outcome(False, F.format(a), str(back), "element print/parse")
    return Outcome(True, detail=f"{len(els) ** 2} products over {F}")


def run_suite(seed: int = 0, instances: int = 1000) -> Report:
    checks = [Check("random-instances", "kernel: canonical form, round trip, evaluation homomorphism",
                    lambda: random_instances(instances, seed))]
    checks += [Check(f"field-tables-F{p**k}", "kernel: finite-field arithmetic", lambda p=p, k=k: field_tables(p, k))
               for p, k in TABLE_FIELDS]
    return run_checks("kernel", checks)
