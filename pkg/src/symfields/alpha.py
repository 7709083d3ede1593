"""Truncated rings F[B]/(B^m), m = p^n, and the automorphisms xi_lambda:
u -> u + lambda(u) B for lambda a p^n-th power polynomial over F_p."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .errors import FieldMismatchError, NonInvertibleError, PreconditionError
from .kernel import GF, Field, Polynomial, RationalFunction, Registry, VariableId, parse_expr
from .kernel.polynomial import BITS, unpack
from .perm import VariableMap, apply_substitution
from .report import Check, Outcome, Report, equal, run_checks

ANCHOR = "Example alpha_p-invar"
PN_LIST = ((2, 1), (2, 2), (2, 3), (3, 1), (3, 2))


class TruncatedElement:
    """sum c_i B^i, i < m, with rational-function coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(coeffs)
        if not self.coeffs:
            raise ValueError("empty coefficient list")

    @classmethod
    def scalar(cls, c: RationalFunction, m: int) -> TruncatedElement:
        zero = c * 0
        return cls((c,) + (zero,) * (m - 1))

    @classmethod
    def B(cls, m: int, field: Field, registry: Registry) -> TruncatedElement:
        if m < 2:
            raise ValueError("B vanishes when m = 1")
        zero = RationalFunction.constant(0, field, registry)
        one = RationalFunction.constant(1, field, registry)
        return cls((zero, one) + (zero,) * (m - 2))

    @property
    def m(self) -> int:
        return len(self.coeffs)

    def _lift(self, other):
        if isinstance(other, TruncatedElement):
            if other.m != self.m:
                raise FieldMismatchError(f"truncation orders {self.m} and {other.m} differ")
            return other
        return TruncatedElement.scalar(self.coeffs[0] * 0 + other, self.m)

    def is_unit(self) -> bool:
        return not self.coeffs[0].is_zero()

    def __add__(self, other):
        o = self._lift(other)
        return TruncatedElement(a + b for a, b in zip(self.coeffs, o.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedElement(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        m = self.m
        out = [self.coeffs[0] * 0] * m
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(m - i):
                b = o.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return TruncatedElement(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = TruncatedElement.scalar(self.coeffs[0] * 0 + 1, self.m)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> TruncatedElement:
        """c0 (1 + N) with N nilpotent, so the inverse is c0^-1 sum_{k<m} (-N)^k."""
        c0 = self.coeffs[0]
        if c0.is_zero():
            raise NonInvertibleError("constant coefficient is zero")
        inv0 = c0.inverse()
        neg_n = TruncatedElement((c0 * 0,) + tuple(-c * inv0 for c in self.coeffs[1:]))
        total = TruncatedElement.scalar(c0 * 0 + 1, self.m)
        term = total
        for _ in range(1, self.m):
            term = term * neg_n
            total = total + term
        return total * inv0

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __eq__(self, other):
        if isinstance(other, TruncatedElement):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = "" if i == 0 else ("B" if i == 1 else f"B^{i}")
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) or "0"

    __repr__ = __str__


@dataclass(frozen=True)
class LambdaDatum:
    """lambda(X) = sum coeffs[e] X^e over F_p with p^n dividing every exponent.

    Over F_p Frobenius is bijective, so this is exactly membership in k F^(p^n)
    for polynomials; rational lambda are not supported.
    """

    p: int
    n: int
    terms: tuple  # ((exponent, coefficient mod p), ...)

    def __post_init__(self):
        q = self.p**self.n
        bad = [e for e, c in self.terms if e % q]
        if bad:
            raise PreconditionError(f"exponents {bad} of lambda are not divisible by p^n = {q}")

    @classmethod
    def make(cls, p: int, n: int, coeffs: dict) -> LambdaDatum:
        clean = {e: c % p for e, c in coeffs.items() if c % p}
        return cls(p, n, tuple(sorted(clean.items())))

    @classmethod
    def parse(cls, p: int, n: int, text: str, var: str = "X") -> LambdaDatum:
        reg = Registry()
        f = parse_expr(text, reg, GF(p))
        if not f.is_polynomial():
            raise PreconditionError("lambda must be a polynomial")
        names = {reg.name(i) for i in f.variables()}
        if names - {var}:
            raise PreconditionError(f"lambda may only use {var}, got {sorted(names)}")
        if not names:
            return cls.make(p, n, {0: f.num.constant_value()})
        x = reg.lookup(var).index
        return cls.make(p, n, {unpack(m, x + 1)[x]: c for m, c in f.num.terms.items()})

    @property
    def q(self) -> int:
        return self.p**self.n

    def __add__(self, other: LambdaDatum) -> LambdaDatum:
        _same_group(self, other)
        coeffs = dict(self.terms)
        for e, c in other.terms:
            coeffs[e] = coeffs.get(e, 0) + c
        return LambdaDatum.make(self.p, self.n, coeffs)

    def __neg__(self) -> LambdaDatum:
        return LambdaDatum.make(self.p, self.n, {e: -c for e, c in self.terms})

    def __call__(self, t):
        """lambda evaluated at a rational function or truncated element."""
        out = t * 0
        for e, c in self.terms:
            out = out + (t**e) * c
        return out

    def __str__(self):
        return " + ".join(f"{c}*X^{e}" if e else str(c) for e, c in self.terms) or "0"


def _same_group(d1: LambdaDatum, d2: LambdaDatum) -> None:
    if (d1.p, d1.n) != (d2.p, d2.n):
        raise PreconditionError(f"(p, n) = {(d1.p, d1.n)} vs {(d2.p, d2.n)}")


def _var_index(f: RationalFunction, v) -> int:
    if isinstance(v, VariableId):
        return v.index
    if isinstance(v, str):
        return f.registry.lookup(v).index
    return int(v)


def _image_of_polynomial(p: Polynomial, images: dict, m: int) -> TruncatedElement:
    """p with variable i replaced by the truncated element images[i]."""
    n = max(images) + 1 if images else 0
    powers: dict = {}
    total = TruncatedElement.scalar(RationalFunction(p._new({})), m)
    groups: dict = {}
    for mono, c in p.terms.items():
        e = unpack(mono, max(n, 1))
        key = tuple(e[i] for i in sorted(images))
        rest = mono
        for i in images:
            rest -= e[i] << (BITS * i)
        groups.setdefault(key, {})[rest] = c
    order = sorted(images)
    for key, rest in groups.items():
        term = TruncatedElement.scalar(RationalFunction(p._new(rest), _canonical=True), m)
        for i, e in zip(order, key):
            if e:
                pw = powers.get((i, e))
                if pw is None:
                    pw = powers[(i, e)] = images[i] ** e
                term = term * pw
        total = total + term
    return total


def xi_lambda_apply(d: LambdaDatum, vars, elt) -> TruncatedElement:
    """The k[B]-algebra map with u -> u + lambda(u) B for u in vars."""
    if isinstance(elt, RationalFunction):
        elt = TruncatedElement.scalar(elt, d.q)
    if elt.m != d.q:
        raise PreconditionError(f"element truncated at B^{elt.m}, lambda needs B^{d.q}")
    sample = elt.coeffs[0]
    if sample.field.p != d.p:
        raise FieldMismatchError(f"coefficients over {sample.field}, lambda over F{d.p}")
    Bt = TruncatedElement.B(d.q, sample.field, sample.registry)
    images = {}
    for v in vars:
        i = _var_index(sample, v)
        u = RationalFunction.var(VariableId(i, sample.registry.name(i), sample.registry.uid),
                                 sample.field, sample.registry)
        images[i] = TruncatedElement.scalar(u, d.q) + Bt * d(u)
    out = TruncatedElement.scalar(sample * 0, d.q)
    Bpow = TruncatedElement.scalar(sample * 0 + 1, d.q)
    for c in elt.coeffs:
        if not c.is_zero():
            used = {i: images[i] for i in c.variables() if i in images}
            if used:
                num = _image_of_polynomial(c.num, used, d.q)
                den = _image_of_polynomial(c.den, used, d.q)
                if not den.is_unit():
                    raise NonInvertibleError("denominator image is not a unit")
                img = num / den if not c.den.is_one() else num
            else:
                img = TruncatedElement.scalar(c, d.q)
            out = out + img * Bpow
        Bpow = Bpow * Bt
    return out


def compose_law_verify(d1: LambdaDatum, d2: LambdaDatum, vars, registry: Registry) -> bool:
    """xi_{d1} o xi_{d2} = xi_{d1 + d2} on every generator in vars."""
    _same_group(d1, d2)
    field = GF(d1.p)
    for v in vars:
        u = RationalFunction.var(registry.var(v) if isinstance(v, str) else v, field, registry)
        lhs = xi_lambda_apply(d1, vars, xi_lambda_apply(d2, vars, u))
        rhs = xi_lambda_apply(d1 + d2, vars, u)
        if lhs != rhs:
            return False
    return True


def _sign(perm) -> int:
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


def determinant_generator(lambdas, us) -> RationalFunction:
    """sum over sigma of sgn(sigma) lambda_1(u_s(1)) ... lambda_d(u_s(d)) u_s(0)."""
    lambdas, us = list(lambdas), list(us)
    d = len(lambdas)
    if d < 1:
        raise PreconditionError("need d >= 1")
    if len(us) != d + 1:
        raise PreconditionError(f"need {d + 1} variables, got {len(us)}")
    if len(set(us)) != len(us):
        raise PreconditionError("variables must be distinct")
    total = us[0] * 0
    for perm in itertools.permutations(range(d + 1)):
        term = us[perm[0]] * _sign(perm)
        for j, lam in enumerate(lambdas, start=1):
            term = term * lam(us[perm[j]])
        total = total + term
    return total


def verify_fixed_generators(lambdas, us) -> bool:
    w = determinant_generator(lambdas, us)
    vars = [u.variables()[0] for u in us]
    fixed = TruncatedElement.scalar(w, lambdas[0].q)
    return all(xi_lambda_apply(lam, vars, w) == fixed for lam in lambdas)


def equivariance_check(d: LambdaDatum, sigma: VariableMap, elt: RationalFunction) -> bool:
    vars = sorted(set(elt.variables()) | set(sigma.support))
    lhs = xi_lambda_apply(d, vars, apply_substitution(elt, sigma))
    img = xi_lambda_apply(d, vars, elt)
    rhs = TruncatedElement(apply_substitution(c, sigma) for c in img.coeffs)
    return lhs == rhs


def enabling_lemma(d: LambdaDatum, registry: Registry) -> bool:
    """lambda(u + c B) = lambda(u) in F[B]/(B^(p^n)), with u and c symbolic."""
    field = GF(d.p)
    u = RationalFunction.var(registry.var("u"), field, registry)
    c = RationalFunction.var(registry.var("c"), field, registry)
    Bt = TruncatedElement.B(d.q, field, registry)
    shifted = TruncatedElement.scalar(u, d.q) + Bt * c
    return d(shifted) == TruncatedElement.scalar(d(u), d.q)


def random_lambda(p: int, n: int, rng: random.Random, max_multiple: int = 2) -> LambdaDatum:
    q = p**n
    return LambdaDatum.make(p, n, {q * k: rng.randrange(p) for k in range(max_multiple + 1)})


def _random_element(rng: random.Random, vars, field: Field, registry: Registry, m: int) -> TruncatedElement:
    def poly():
        f = RationalFunction.constant(rng.randrange(field.p), field, registry)
        for v in vars:
            f = f + RationalFunction.var(v, field, registry) ** rng.randrange(3) * rng.randrange(field.p)
        return f

    coeffs = [poly() for _ in range(m)]
    den = poly() + 1
    if not den.is_zero():
        coeffs[0] = coeffs[0] / den
    return TruncatedElement(coeffs)


def homomorphism_check(d: LambdaDatum, seed: int = 0, trials: int = 3) -> Outcome:
    rng = random.Random(seed)
    reg = Registry()
    field = GF(d.p)
    vars = [reg.var("u0"), reg.var("u1")]
    for _ in range(trials):
        x = _random_element(rng, vars, field, reg, d.q)
        y = _random_element(rng, vars, field, reg, d.q)
        xi = lambda e: xi_lambda_apply(d, vars, e)  # noqa: E731
        if xi(x * y) != xi(x) * xi(y):
            return Outcome(False, detail=f"product fails for {x} and {y}")
        if xi(x + y) != xi(x) + xi(y):
            return Outcome(False, detail=f"sum fails for {x} and {y}")
    return Outcome(True)


def pn_checks(p: int, n: int, seed: int = 0) -> list[Check]:
    rng = random.Random(seed * 1009 + p * 31 + n)
    tag = f"p{p}-n{n}"
    q = p**n
    family = [random_lambda(p, n, rng) for _ in range(3)] + [LambdaDatum.make(p, n, {q: 1})]
    field = GF(p)

    def composition():
        reg = Registry()
        vars = [reg.var("u0"), reg.var("u1")]
        for d1, d2 in itertools.product(family, repeat=2):
            if not compose_law_verify(d1, d2, vars, reg):
                return Outcome(False, detail=f"lambda={d1}, lambda'={d2}")
        return Outcome(True, detail=f"{len(family) ** 2} pairs")

    def invertibility():
        reg = Registry()
        vars = [reg.var("u0")]
        u = RationalFunction.var(vars[0], field, reg)
        return all(xi_lambda_apply(d, vars, xi_lambda_apply(-d, vars, u)) == TruncatedElement.scalar(u, q)
                   for d in family)

    def fixed(dim):
        reg = Registry()
        us = [RationalFunction.var(reg.var(f"u{i}"), field, reg) for i in range(dim + 1)]
        lambdas = [LambdaDatum.make(p, n, {q * (j + 1): 1, q: j}) for j in range(dim)]
        return verify_fixed_generators(lambdas, us)

    return [
        Check(f"composition-{tag}", f"{ANCHOR}: lambda -> xi_lambda is a group homomorphism", composition),
        Check(f"invertibility-{tag}", f"{ANCHOR}: xi_lambda is invertible", invertibility),
        Check(f"enabling-lemma-{tag}", f"{ANCHOR}: lambda(u + cB) = lambda(u)",
              lambda: all(enabling_lemma(d, Registry()) for d in family)),
        Check(f"fixed-d1-{tag}", f"{ANCHOR}: the determinant elements lie in K_Lambda", lambda: fixed(1)),
        Check(f"fixed-d2-{tag}", f"{ANCHOR}: the determinant elements lie in K_Lambda", lambda: fixed(2)),
        Check(f"homomorphism-{tag}", f"{ANCHOR}: xi_lambda is a k[B]-algebra endomorphism",
              lambda: homomorphism_check(family[-1], seed, trials=2)),
    ]


def example_checks() -> list[Check]:
    def example_map():
        reg = Registry()
        F2 = GF(2)
        u = RationalFunction.var(reg.var("u"), F2, reg)
        got = xi_lambda_apply(LambdaDatum.parse(2, 1, "X^2"), ["u"], u)
        return equal(got, TruncatedElement((u, u**2)))

    def zero_lambda():
        reg = Registry()
        f = parse_expr("(u0 + u1^2)/(u0 + 1)", reg, GF(3))
        return xi_lambda_apply(LambdaDatum.make(3, 1, {}), ["u0", "u1"], f) == TruncatedElement.scalar(f, 3)

    def rejected():
        try:
            LambdaDatum.parse(2, 1, "X")
        except PreconditionError:
            return True
        return False

    def char2_cancel():
        reg = Registry()
        d = LambdaDatum.parse(2, 1, "X^2")
        return (d + d).terms == () and compose_law_verify(d, d, [reg.var("u")], reg)

    def p3_pair():
        reg = Registry()
        return compose_law_verify(LambdaDatum.parse(3, 1, "X^3"), LambdaDatum.parse(3, 1, "X^6"), [reg.var("u")], reg)

    def det_d1():
        reg = Registry()
        F2 = GF(2)
        u0, u1 = (RationalFunction.var(reg.var(n), F2, reg) for n in ("u0", "u1"))
        return equal(determinant_generator([LambdaDatum.parse(2, 1, "X^2")], [u0, u1]), u1**2 * u0 + u0**2 * u1)

    def det_constant():
        reg = Registry()
        F3 = GF(3)
        u0, u1 = (RationalFunction.var(reg.var(n), F3, reg) for n in ("u0", "u1"))
        return equal(determinant_generator([LambdaDatum.make(3, 1, {0: 2})], [u0, u1]), 2 * (u0 - u1))

    def det_equal_rows():
        reg = Registry()
        F3 = GF(3)
        us = [RationalFunction.var(reg.var(f"u{i}"), F3, reg) for i in range(3)]
        lam = LambdaDatum.parse(3, 1, "X^3")
        return determinant_generator([lam, lam], us).is_zero()

    def equivariance():
        reg = Registry()
        f = parse_expr("u0*u1 + u0^2/(u1 + 1)", reg, GF(2))
        d = LambdaDatum.parse(2, 2, "X^4")
        sigma = VariableMap.swap("u0", "u1", reg)
        return equivariance_check(d, sigma, f) and equivariance_check(d, VariableMap.identity(reg), f)

    def unit_error():
        reg = Registry()
        F2 = GF(2)
        z = TruncatedElement.B(2, F2, reg)
        try:
            z.inverse()
        except NonInvertibleError:
            return True
        return False

    return [
        Check("xi-example", f"{ANCHOR}: u -> u + lambda(u) B", example_map),
        Check("xi-zero-lambda", f"{ANCHOR}: xi_0 is the identity", zero_lambda),
        Check("lambda-membership", f"{ANCHOR}: lambda in kF^(p^n)", rejected),
        Check("composition-char2-cancel", f"{ANCHOR}: xi_lambda o xi_lambda = id in characteristic 2", char2_cancel),
        Check("composition-p3", f"{ANCHOR}: xi_(X^3) o xi_(X^6) = xi_(X^3 + X^6)", p3_pair),
        Check("determinant-d1", f"{ANCHOR}: the alternating sum for d = 1", det_d1),
        Check("determinant-constant", f"{ANCHOR}: constant lambda factors out", det_constant),
        Check("determinant-equal-rows", f"{ANCHOR}: alternating sum with equal rows vanishes", det_equal_rows),
        Check("equivariance", f"{ANCHOR}: xi_lambda is S_Psi-equivariant", equivariance),
        Check("non-unit", f"{ANCHOR}: B is not invertible", unit_error),
    ]


def run_suite(seed: int = 0) -> Report:
    checks = example_checks()
    for p, n in PN_LIST:
        checks += pn_checks(p, n, seed)
    return run_checks("alpha", checks)


def verify_lambda(p: int, n: int, text: str, var_names, seed: int = 0) -> Report:
    """The alpha_{p^n} checks for one user-supplied lambda (a polynomial in X)."""
    d = LambdaDatum.parse(p, n, text)
    var_names = list(var_names)
    if len(var_names) < 2:
        raise PreconditionError("need at least two variables")
    q, field = d.q, GF(p)
    frob = LambdaDatum.make(p, n, {q: 1})

    def setup():
        reg = Registry()
        vars = [reg.var(v) for v in var_names]
        return reg, vars, [RationalFunction.var(v, field, reg) for v in vars]

    def composition():
        reg, vars, _ = setup()
        return all(compose_law_verify(a, b, vars, reg) for a, b in ((d, d), (d, frob), (frob, d)))

    def invertibility():
        _, vars, us = setup()
        return all(xi_lambda_apply(d, vars, xi_lambda_apply(-d, vars, u)) == TruncatedElement.scalar(u, q)
                   for u in us)

    def fixed():
        _, _, us = setup()
        lambdas = [d] + [LambdaDatum.make(p, n, {q * (j + 1): 1}) for j in range(1, len(us) - 1)]
        return verify_fixed_generators(lambdas, us)

    checks = [
        Check("composition", f"{ANCHOR}: lambda -> xi_lambda is a group homomorphism", composition),
        Check("invertibility", f"{ANCHOR}: xi_lambda is invertible", invertibility),
        Check("enabling-lemma", f"{ANCHOR}: lambda(u + cB) = lambda(u)", lambda: enabling_lemma(d, Registry())),
        Check("fixed-determinant", f"{ANCHOR}: the determinant elements lie in K_Lambda", fixed),
        Check("homomorphism", f"{ANCHOR}: xi_lambda is a k[B]-algebra endomorphism",
              lambda: homomorphism_check(d, seed, trials=2)),
    ]
    return run_checks(f"alpha-p{p}-n{n}", checks)
