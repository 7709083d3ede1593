"""Derivations f*d/dX of k(X), their Lie bracket, and the normal-form
coordinate R of finite-dimensional subalgebras."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .errors import (
    ClassificationError,
    DependentBasisError,
    FieldMismatchError,
    InternalConsistencyError,
    NotClosedError,
    PreconditionError,
)
from .kernel import DEFAULT_REGISTRY, QQ, Polynomial, RationalFunction, Registry, VariableId, parse_expr
from .kernel.gcd import poly_lcm
from .kernel.linalg import rank, solve
from .kernel.polynomial import mono_exp
from .report import Check, Outcome, Report, equal, run_checks

ANCHOR = "Prop. restr-fin-dim"


def rf_derivative(f: RationalFunction, x: VariableId) -> RationalFunction:
    """Exact d/dX; other variables are constants."""
    return f.derivative(x)


@dataclass(frozen=True)
class Derivation:
    """The derivation coef * d/dX."""

    coef: RationalFunction
    var: VariableId

    @classmethod
    def parse(cls, text: str, var: str = "X", registry: Registry = DEFAULT_REGISTRY) -> Derivation:
        return cls(parse_expr(text, registry), registry.var(var))

    def _same(self, other: Derivation):
        if other.var != self.var:
            raise FieldMismatchError(f"derivations in {self.var} and {other.var}")

    def bracket(self, other: Derivation) -> Derivation:
        """[f d, g d] = (f g' - g f') d."""
        self._same(other)
        f, g, x = self.coef, other.coef, self.var
        return Derivation(f * g.derivative(x) - g * f.derivative(x), x)

    def __call__(self, h: RationalFunction) -> RationalFunction:
        return self.coef * h.derivative(self.var)

    def __add__(self, other: Derivation) -> Derivation:
        self._same(other)
        return Derivation(self.coef + other.coef, self.var)

    def __sub__(self, other: Derivation) -> Derivation:
        self._same(other)
        return Derivation(self.coef - other.coef, self.var)

    def __neg__(self):
        return Derivation(-self.coef, self.var)

    def __mul__(self, c) -> Derivation:
        return Derivation(self.coef * c, self.var)

    __rmul__ = __mul__

    def __truediv__(self, c) -> Derivation:
        return Derivation(self.coef / c, self.var)

    def is_zero(self) -> bool:
        return self.coef.is_zero()

    def __str__(self):
        c = str(self.coef)
        if len(self.coef.num.terms) > 1 or not self.coef.den.is_one():
            c = f"({c})"
        return f"{c}*d/d{self.var.name}"


def bracket(d1: Derivation, d2: Derivation) -> Derivation:
    return d1.bracket(d2)


# -- k-linear algebra on coefficients ----------------------------------------------


def _coefficient_vectors(fs: list[RationalFunction]):
    """Clear denominators and return coefficient vectors over a shared monomial list."""
    den = fs[0].den
    for f in fs[1:]:
        den = poly_lcm(den, f.den)
    polys: list[Polynomial] = [f.num * den.divexact(f.den) for f in fs]
    monos = sorted({m for p in polys for m in p.terms})
    zero = fs[0].field.zero
    return [[p.terms.get(m, zero) for m in monos] for p in polys]


def span_rank(fs: list[RationalFunction]) -> int:
    if not fs:
        return 0
    return rank(_coefficient_vectors(fs), fs[0].field)


def in_span(g: RationalFunction, fs: list[RationalFunction]) -> bool:
    """Whether g = sum c_i f_i with constants c_i."""
    if g.is_zero():
        return True
    if not fs:
        return False
    vecs = _coefficient_vectors(fs + [g])
    return solve(vecs[:-1], vecs[-1], g.field) is not None


def span_coordinates(g: RationalFunction, fs: list[RationalFunction]):
    vecs = _coefficient_vectors(fs + [g])
    return solve(vecs[:-1], vecs[-1], g.field)


class LieBasis:
    """Derivations linearly independent over the constants."""

    def __init__(self, elements):
        elements = tuple(elements)
        if not elements:
            raise PreconditionError("empty basis")
        x = elements[0].var
        for e in elements:
            if e.var != x:
                raise FieldMismatchError("basis elements use different variables")
        if span_rank([e.coef for e in elements]) != len(elements):
            raise DependentBasisError("basis elements are linearly dependent over k")
        self.elements = elements
        self.var = x

    @classmethod
    def parse(cls, texts, var: str = "X", registry: Registry = DEFAULT_REGISTRY) -> LieBasis:
        return cls(Derivation.parse(t, var, registry) for t in texts)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def contains(self, d: Derivation) -> bool:
        return in_span(d.coef, [e.coef for e in self.elements])

    def __repr__(self):
        return "LieBasis(" + ", ".join(str(e) for e in self.elements) + ")"


def is_abelian(basis: LieBasis) -> bool:
    ab = all(a.bracket(b).is_zero() for a, b in itertools.combinations(basis, 2))
    if ab and len(basis) > 1:
        # commuting derivations of k(X) are proportional over k
        raise InternalConsistencyError("independent commuting derivations found")
    return ab


def is_closed(basis: LieBasis) -> bool:
    return all(basis.contains(a.bracket(b)) for a, b in itertools.combinations(basis, 2))


def span_equal(a: list[Derivation], b: list[Derivation]) -> bool:
    fa, fb = [d.coef for d in a], [d.coef for d in b]
    return all(in_span(g, fb) for g in fa) and all(in_span(g, fa) for g in fb)


def proportional_over_k(f1: RationalFunction, f2: RationalFunction, x: VariableId) -> bool:
    """d/dX (f1/f2) = 0, the criterion for f1 d/dX and f2 d/dX to commute."""
    return (f1 / f2).derivative(x).is_zero()


# -- normal forms --------------------------------------------------------------------


def _constant_ratio(a: RationalFunction, b: RationalFunction):
    """a / b if it is a constant, else None."""
    q = a / b
    return q if q.is_constant() else None


def _affine_normalize(r: RationalFunction, x: VariableId) -> tuple[RationalFunction, object]:
    """Pick a representative of R up to R -> alpha*R + beta; returns (R', alpha)."""
    f = r.field
    if not f.is_zero(r.den.evaluate({x.index: f.zero}).constant_value()):
        r0 = r.partial_evaluate({x: 0})
        if r0.is_constant():
            r = r - r0
    alpha = f.inv(r.num.leading_coefficient())
    return r * RationalFunction.constant(f.wrap(alpha), f, r.registry), alpha


def _normal_pair(basis: LieBasis) -> tuple[RationalFunction, Derivation]:
    if len(basis) != 2:
        raise PreconditionError("normal_form_2dim needs exactly two elements")
    if not is_closed(basis):
        raise NotClosedError("basis is not closed under the bracket")
    a, b = basis
    eta1 = a.bracket(b)
    if eta1.is_zero():
        raise PreconditionError("basis is abelian")
    x = basis.var
    other = a if _constant_ratio(a.coef, eta1.coef) is None else b
    mu = _constant_ratio(eta1.bracket(other).coef, eta1.coef)
    if mu is None or mu.is_zero():
        raise InternalConsistencyError("derived subalgebra is not an ideal")
    eta2 = other / mu
    r = eta2.coef / eta1.coef
    r, alpha = _affine_normalize(r, x)
    eta1 = eta1 / RationalFunction.constant(r.field.wrap(alpha), r.field, r.registry)
    if eta1.coef * r.derivative(x) != 1:
        raise InternalConsistencyError("normal form does not satisfy eta1(R) = 1")
    return r, eta1


def normal_form_2dim(basis: LieBasis) -> RationalFunction:
    """R with basis span = span{d/dR, R d/dR}, where d/dR = (1/R') d/dX."""
    return _normal_pair(basis)[0]


def sl2_basis(r: RationalFunction, x: VariableId) -> list[Derivation]:
    """{d/dR, R d/dR, R^2 d/dR} written over d/dX."""
    inv = r.derivative(x).inverse()
    return [Derivation(inv, x), Derivation(r * inv, x), Derivation(r * r * inv, x)]


def _laurent_lead(f: RationalFunction, x: VariableId, point):
    """(order, leading coefficient) of f at X = point (None means infinity)."""
    fld = f.field
    if point is None:
        n, d = f.num, f.den
        return d.degree(x) - n.degree(x), fld.div(n.coefficient_in(x.index, n.degree(x)).constant_value(),
                                                  d.coefficient_in(x.index, d.degree(x)).constant_value())
    X = RationalFunction.var(x, fld, f.registry)
    g = f.substitute({x: X + point})

    def low(p):
        k = min(mono_exp(m, x.index) for m in p.terms)
        return k, p.coefficient_in(x.index, k).constant_value()

    (kn, cn), (kd, cd) = low(g.num), low(g.den)
    return kn - kd, fld.div(cn, cd)


def _valuation_echelon(elems: list[Derivation], point) -> list[Derivation]:
    """Combine elements until their orders at ``point`` are distinct; sorted by
    decreasing order."""
    x = elems[0].var
    work = list(elems)
    while True:
        leads = [_laurent_lead(e.coef, x, point) for e in work]
        seen: dict[int, int] = {}
        clash = None
        for i, (order, _) in enumerate(leads):
            if order in seen:
                clash = (seen[order], i)
                break
            seen[order] = i
        if clash is None:
            return [e for _, e in sorted(zip(leads, work), key=lambda t: -t[0][0])]
        i, j = clash
        fld = work[i].coef.field
        c = fld.div(leads[j][1], leads[i][1])
        work[j] = work[j] - work[i] * RationalFunction.constant(fld.wrap(c), fld, work[i].coef.registry)


def normal_form_3dim(basis: LieBasis) -> RationalFunction:
    """R with basis span = span{d/dR, R d/dR, R^2 d/dR}.

    Closed pairs of basis elements are tried first, then the two elements of
    highest order at a few points after valuation echelon; every candidate
    is confirmed by span equality in both directions.
    """
    if len(basis) != 3:
        raise PreconditionError("normal_form_3dim needs exactly three elements")
    if not is_closed(basis):
        raise NotClosedError("basis is not closed under the bracket")
    x = basis.var
    elems = list(basis)

    def attempt(pair):
        try:
            sub = LieBasis(pair)
        except DependentBasisError:
            return None
        if not is_closed(sub) or all(a.bracket(b).is_zero() for a, b in itertools.combinations(sub, 2)):
            return None
        r = normal_form_2dim(sub)
        return r if span_equal(elems, sl2_basis(r, x)) else None

    for pair in itertools.combinations(elems, 2):
        r = attempt(pair)
        if r is not None:
            return r
    for point in (None, 0, 1, -1, 2, -2, 3):
        try:
            ech = _valuation_echelon(elems, point)
        except (ZeroDivisionError, ValueError):
            continue
        r = attempt(ech[:2])
        if r is not None:
            return r
    raise ClassificationError("no coordinate R found for this 3-dimensional algebra")


# -- random instances and the module suite -------------------------------------------


def random_derivation(rng: random.Random, x: VariableId, registry: Registry) -> Derivation:
    def poly(deg):
        return Polynomial.from_dict({(0,) * x.index + (e,): rng.randint(-4, 4) for e in range(deg + 1)},
                                    QQ, registry)

    num = poly(rng.randint(0, 3))
    den = poly(rng.randint(0, 2))
    while den.is_zero():
        den = poly(1)
    return Derivation(RationalFunction(num, den), x)


def _checks(seed: int, registry: Registry) -> list[Check]:
    x = registry.var("X")

    def D(s):
        return Derivation.parse(s, "X", registry)

    def B(*s):
        return LieBasis.parse(s, "X", registry)

    def brackets():
        ok = D("1").bracket(D("X")) == D("1")
        ok &= D("X").bracket(D("X^2")) == D("X^2")
        ok &= D("X^3+1/X").bracket(D("X^3+1/X")).is_zero()
        return ok

    def sl2_closed():
        return is_closed(B("1", "X", "X^2")) and not is_closed(B("X^2", "X^3"))

    def jacobi():
        rng = random.Random(seed)
        for _ in range(100):
            a, b, c = (random_derivation(rng, x, registry) for _ in range(3))
            if a.bracket(b) != -b.bracket(a):
                return Outcome(False, str(a.bracket(b)), str(-b.bracket(a)), "antisymmetry")
            j = a.bracket(b.bracket(c)) + b.bracket(c.bracket(a)) + c.bracket(a.bracket(b))
            if not j.is_zero():
                return Outcome(False, str(j), "0", "Jacobi")
        return Outcome(True, detail="100 random triples")

    def abelian():
        ok = is_abelian(B("1"))
        ok &= not is_abelian(B("1", "X"))
        try:
            B("1", "2")
            ok = False
        except DependentBasisError:
            pass
        return ok

    def lemma():
        rng = random.Random(seed + 1)
        for _ in range(50):
            f = random_derivation(rng, x, registry).coef
            if f.is_zero():
                continue
            c = rng.randint(1, 9)
            if not proportional_over_k(f, f * c, x):
                return False
            if not D("1").bracket(Derivation(f, x)).is_zero() and proportional_over_k(
                    RationalFunction.constant(1, QQ, registry), f, x):
                return False
        return proportional_over_k(D("X").coef, D("X^2").coef, x) is False

    def nf2():
        r1 = normal_form_2dim(B("1", "X"))
        r2 = normal_form_2dim(B("1+X", "X"))
        ok = r1 == D("X").coef and r2 == D("X").coef
        return Outcome(ok, f"{r1}, {r2}", "X, X")

    def nf3_standard():
        return equal(normal_form_3dim(B("1", "X", "X^2")), parse_expr("X", registry))

    def nf3_conjugated():
        basis = B("(X+1)^2", "X*(X+1)", "X^2")
        r = normal_form_3dim(basis)
        same = span_equal(list(basis), sl2_basis(r, x))
        out = equal(r, parse_expr("X/(X+1)", registry))
        return Outcome(out.ok and same, out.lhs, out.rhs)

    def nf3_fallback():
        # pairs of the given elements are not subalgebras here
        basis = B("1+X^2", "X+X^2", "1-X+X^2")
        r = normal_form_3dim(basis)
        return span_equal(list(basis), sl2_basis(r, x))

    def not_closed():
        try:
            normal_form_3dim(B("1", "X", "X^3"))
        except NotClosedError:
            return True
        return False

    return [
        Check("bracket-examples", f"{ANCHOR}: eta_1(eta_2/eta_1) = 1", brackets),
        Check("sl2-closure", f"{ANCHOR}: k d/dX + kX d/dX + kX^2 d/dX", sl2_closed),
        Check("antisymmetry-jacobi", f"{ANCHOR}: Lie algebra axioms", jacobi),
        Check("abelian-one-dim", "Lemma vanishing-p-powers: abelian subalgebras are one-dimensional", abelian),
        Check("commuting-criterion", "Lemma vanishing-p-powers: d/dX(f1/f2) = 0 iff f1/f2 in k", lemma),
        Check("normal-form-2", f"{ANCHOR}: R := eta_2/eta_1", nf2),
        Check("normal-form-3-standard", f"{ANCHOR}: d = 3 normal form", nf3_standard),
        Check("normal-form-3-conjugated", f"{ANCHOR}: d = 3 normal form after X -> X/(X+1)", nf3_conjugated),
        Check("normal-form-3-echelon", f"{ANCHOR}: valuation argument", nf3_fallback),
        Check("normal-form-3-not-closed", f"{ANCHOR}: then d <= 3", not_closed),
    ]


def run_suite(seed: int = 0, registry: Registry | None = None) -> Report:
    return run_checks("lie", _checks(seed, registry or Registry()))
