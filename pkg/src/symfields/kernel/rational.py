"""Canonical rational functions: reduced fractions of polynomials whose
denominator has graded-lex leading coefficient 1."""

from __future__ import annotations

from fractions import Fraction

from ..errors import DivisionByZeroError, FieldMismatchError, IncompleteAssignmentError, PoleError
from .fields import QQ, Field, GFElement
from .gcd import poly_gcd
from .polynomial import BITS, SLOT, Polynomial
from .registry import DEFAULT_REGISTRY, Registry, VariableId

_SCALARS = (int, Fraction, GFElement)


class RationalFunction:
    """An element of Frac(K[vars]) in canonical form.

    Two instances are equal as field elements iff their stored numerator and
    denominator coincide, so ``==`` and ``hash`` work structurally.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Polynomial, den: Polynomial | None = None, *, _canonical: bool = False):
        if den is None:
            den = num._new({0: num.field.one})
        if num.field is not den.field or num.registry is not den.registry:
            raise FieldMismatchError("numerator and denominator over different fields")
        if not den.terms:
            raise DivisionByZeroError("zero denominator")
        if not _canonical:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def constant(cls, c, field: Field = QQ, registry: Registry = DEFAULT_REGISTRY) -> RationalFunction:
        return cls(Polynomial.constant(c, field, registry), _canonical=True)

    @classmethod
    def var(cls, v: VariableId | str, field: Field = QQ, registry: Registry = DEFAULT_REGISTRY) -> RationalFunction:
        return cls(Polynomial.var(v, field, registry), _canonical=True)

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> RationalFunction:
        return cls(p, _canonical=True)

    @property
    def field(self) -> Field:
        return self.num.field

    @property
    def registry(self) -> Registry:
        return self.num.registry

    def _lift(self, other):
        if isinstance(other, RationalFunction):
            if other.field is not self.field or other.registry is not self.registry:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, Polynomial):
            if other.field is not self.field or other.registry is not self.registry:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return RationalFunction(other, _canonical=True)
        if isinstance(other, _SCALARS):
            return RationalFunction.constant(other, self.field, self.registry)
        return None

    # -- queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num.terms

    def __bool__(self):
        return bool(self.num.terms)

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_one()

    def constant_value(self):
        """User-facing coefficient of a constant rational function."""
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.field.wrap(self.num.constant_value())

    def variables(self) -> list[int]:
        return sorted(set(self.num.variables()) | set(self.den.variables()))

    def variable_ids(self) -> list[VariableId]:
        reg = self.registry
        return [VariableId(i, reg.name(i), reg.uid) for i in self.variables()]

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o.num.terms:
            return self
        if not self.num.terms:
            return o
        a, b, c, d = self.num, self.den, o.num, o.den
        if b.is_one() and d.is_one():
            return RationalFunction(a + c, b, _canonical=True)
        if d.is_one():
            return RationalFunction(a + c * b, b, _canonical=True)
        if b.is_one():
            return RationalFunction(a * d + c, d, _canonical=True)
        g = poly_gcd(b, d)
        if g.is_one():
            # coprime denominators give a reduced sum
            return _normalized(a * d + b * c, b * d)
        b1, d1 = b.divexact(g), d.divexact(g)
        n = a * d1 + c * b1
        if not n.terms:
            return RationalFunction(n, _canonical=True)
        g2 = poly_gcd(n, g)
        if not g2.is_one():
            n = n.divexact(g2)
            g = g.divexact(g2)
        return _normalized(n, b1 * d1 * g)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _canonical=True)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.num.terms or not o.num.terms:
            return RationalFunction(self.num._new({}), _canonical=True)
        a, b, c, d = self.num, self.den, o.num, o.den
        if b.is_one() and d.is_one():
            return RationalFunction(a * c, b, _canonical=True)
        g1 = poly_gcd(a, d) if not d.is_one() else None
        g2 = poly_gcd(c, b) if not b.is_one() else None
        if g1 is not None and not g1.is_one():
            a, d = a.divexact(g1), d.divexact(g1)
        if g2 is not None and not g2.is_one():
            c, b = c.divexact(g2), b.divexact(g2)
        return _normalized(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self) -> RationalFunction:
        if not self.num.terms:
            raise DivisionByZeroError("inverse of zero")
        return _normalized(self.den, self.num)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise ValueError("exponent must be an integer")
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(self.num**n, self.den**n, _canonical=True)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return (self.field is other.field and self.registry is other.registry
                    and self.num.terms == other.num.terms and self.den.terms == other.den.terms)
        if isinstance(other, (Polynomial, *_SCALARS)):
            try:
                o = self._lift(other)
            except (FieldMismatchError, ZeroDivisionError):
                return False
            return self == o
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- calculus and substitution -----------------------------------------
    def derivative(self, var: int | VariableId) -> RationalFunction:
        """Exact partial derivative by the quotient rule."""
        n, d = self.num, self.den
        dn, dd = n.derivative(var), d.derivative(var)
        if d.is_one():
            return RationalFunction(dn, d, _canonical=True)
        if not dd.terms:
            return RationalFunction(dn, d)
        return RationalFunction(dn * d - n * dd, d * d)

    def evaluate(self, assignment: dict) -> object:
        """Exact value at a full assignment; keys are VariableIds or names."""
        values = _raw_assignment(self, assignment)
        missing = [i for i in self.variables() if i not in values]
        if missing:
            names = ", ".join(self.registry.name(i) for i in missing)
            raise IncompleteAssignmentError(f"no value for {names}")
        f = self.field
        den = self.den.evaluate(values).constant_value()
        if f.is_zero(den):
            raise PoleError("pole at assignment")
        num = self.num.evaluate(values).constant_value()
        return f.wrap(f.div(num, den))

    def partial_evaluate(self, assignment: dict) -> RationalFunction:
        values = _raw_assignment(self, assignment)
        den = self.den.evaluate(values)
        if not den.terms:
            raise PoleError("denominator vanishes identically at the partial assignment")
        return RationalFunction(self.num.evaluate(values), den)

    def rename(self, mapping: dict[int, int]) -> RationalFunction:
        """Rename variables.  A renaming that is injective on the variables
        present keeps numerator and denominator coprime, so no gcd is needed."""
        used = self.variables()
        images = [mapping.get(i, i) for i in used]
        num, den = self.num.rename(mapping), self.den.rename(mapping)
        if len(set(images)) == len(images):
            return _normalized(num, den)
        return RationalFunction(num, den)

    def substitute(self, images: dict) -> RationalFunction:
        """Simultaneously replace variables by rational functions.

        Keys are VariableIds, names or registry indices.  Rational images are
        combined with Henrici-style arithmetic, which keeps every gcd small.
        """
        imgs: dict[int, RationalFunction] = {}
        for k, v in images.items():
            i = _index(self.registry, k)
            lifted = self._lift(v)
            if lifted is None:
                raise TypeError(f"cannot substitute {v!r}")
            imgs[i] = lifted
        if not imgs:
            return self
        used = set(self.variables())
        imgs = {i: r for i, r in imgs.items() if i in used}
        if not imgs:
            return self
        if all(r.is_polynomial() for r in imgs.values()):
            polys = {i: r.num for i, r in imgs.items()}
            return RationalFunction(self.num.substitute(polys), self.den.substitute(polys))
        return _evaluate_at(self.num, imgs) / _evaluate_at(self.den, imgs)

    # -- display ------------------------------------------------------------
    def __str__(self):
        from .expr import format_rational

        return format_rational(self)

    def __repr__(self):
        return f"RationalFunction({str(self)!r}, {self.field!r})"


def _normalized(num: Polynomial, den: Polynomial) -> RationalFunction:
    """Canonical form of num/den when the two are already coprime."""
    if not den.terms:
        raise DivisionByZeroError("zero denominator")
    if not num.terms:
        return RationalFunction(num, den._new({0: den.field.one}), _canonical=True)
    lc = den.leading_coefficient()
    f = den.field
    if lc != f.one:
        inv = f.inv(lc)
        num, den = num.scale(inv), den.scale(inv)
    return RationalFunction(num, den, _canonical=True)


def _reduce(num: Polynomial, den: Polynomial):
    if not num.terms:
        return num, den._new({0: den.field.one})
    if not den.is_constant():
        g = poly_gcd(num, den)
        if not g.is_one():
            num, den = num.divexact(g), den.divexact(g)
    r = _normalized(num, den)
    return r.num, r.den


def _index(registry: Registry, key) -> int:
    if isinstance(key, VariableId):
        if key.registry_id != registry.uid:
            raise FieldMismatchError(f"variable {key} belongs to another registry")
        return key.index
    if isinstance(key, str):
        return registry.lookup(key).index
    return int(key)


def _raw_assignment(f: RationalFunction, assignment: dict) -> dict[int, object]:
    return {_index(f.registry, k): f.field.convert(v) for k, v in assignment.items()}


def _evaluate_at(p: Polynomial, imgs: dict[int, RationalFunction]) -> RationalFunction:
    """p with variables replaced by rational images; terms sharing the same
    exponents in the substituted variables are grouped first."""
    mask = 0
    for i in imgs:
        mask |= SLOT << (BITS * i)
    groups: dict[int, dict] = {}
    for m, c in p.terms.items():
        key = m & mask
        groups.setdefault(key, {})[m - key] = c
    powers: dict = {}
    total = RationalFunction(p._new({}), _canonical=True)
    for key, rest in groups.items():
        term = RationalFunction(p._new(rest), _canonical=True)
        for i, r in imgs.items():
            e = (key >> (BITS * i)) & SLOT
            if e:
                pw = powers.get((i, e))
                if pw is None:
                    pw = powers[(i, e)] = r**e
                term = term * pw
        total = total + term
    return total
