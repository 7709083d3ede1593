"""Sparse multivariate polynomials over an exact coefficient field.

A monomial is packed into one Python int: the exponent of the variable with
registry index ``i`` occupies bits ``16*i .. 16*i+15``.  Exponents stay below
2**15 so that the top bit of every slot can serve as a borrow guard in the
divisibility test.  Multiplying monomials is then integer addition, and
comparing packed ints is a lexicographic monomial order (highest index most
significant) that the division routines use internally.  The *canonical*
order for normalization and printing is graded lexicographic with registry
index 0 most significant, see :func:`grlex_key`.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import DivisionByZeroError, FieldMismatchError
from .fields import QQ, Field, GFElement
from .registry import DEFAULT_REGISTRY, Registry, VariableId

BITS = 16
SLOT = (1 << BITS) - 1
MAX_EXP = (1 << (BITS - 1)) - 1

_guards: list[int] = [0]


def _guard(nslots: int) -> int:
    while len(_guards) <= nslots:
        n = len(_guards)
        _guards.append(_guards[-1] | (1 << (BITS * n - 1)))
    return _guards[nslots]


def mono_divides(a: int, b: int) -> bool:
    """True iff monomial ``a`` divides monomial ``b``."""
    g = _guard((max(a, b).bit_length() + BITS - 1) // BITS)
    return ((b | g) - a) & g == g


def mono_exp(m: int, i: int) -> int:
    return (m >> (BITS * i)) & SLOT


def unpack(m: int, n: int | None = None) -> tuple[int, ...]:
    if n is None:
        n = (m.bit_length() + BITS - 1) // BITS
    return tuple((m >> (BITS * i)) & SLOT for i in range(n))


def pack(exps) -> int:
    m = 0
    for i, e in enumerate(exps):
        if e < 0 or e > MAX_EXP:
            raise OverflowError(f"exponent {e} out of range")
        m |= e << (BITS * i)
    return m


def mono_degree(m: int) -> int:
    d = 0
    while m:
        d += m & SLOT
        m >>= BITS
    return d


def grlex_key(m: int, n: int):
    e = unpack(m, n)
    return (sum(e), e)


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps packed monomials to raw coefficients."""

    __slots__ = ("field", "registry", "terms", "_hash")

    def __init__(self, terms: dict, field: Field = QQ, registry: Registry = DEFAULT_REGISTRY):
        self.field = field
        self.registry = registry
        self.terms = terms
        self._hash = None

    # -- construction -------------------------------------------------------
    @classmethod
    def zero(cls, field: Field = QQ, registry: Registry = DEFAULT_REGISTRY) -> Polynomial:
        return cls({}, field, registry)

    @classmethod
    def constant(cls, c, field: Field = QQ, registry: Registry = DEFAULT_REGISTRY) -> Polynomial:
        c = field.convert(c)
        return cls({0: c} if not field.is_zero(c) else {}, field, registry)

    @classmethod
    def var(cls, v: VariableId | str, field: Field = QQ, registry: Registry = DEFAULT_REGISTRY) -> Polynomial:
        if isinstance(v, str):
            v = registry.var(v)
        elif v.registry_id != registry.uid:
            raise FieldMismatchError(f"variable {v} belongs to another registry")
        return cls({1 << (BITS * v.index): field.one}, field, registry)

    @classmethod
    def from_dict(cls, data: dict, field: Field = QQ, registry: Registry = DEFAULT_REGISTRY) -> Polynomial:
        """Build from ``{exponent_tuple: coefficient}``."""
        terms: dict = {}
        for exps, c in data.items():
            m = pack(exps)
            c = field.add(terms.get(m, field.zero), field.convert(c))
            if field.is_zero(c):
                terms.pop(m, None)
            else:
                terms[m] = c
        return cls(terms, field, registry)

    def _new(self, terms: dict) -> Polynomial:
        return Polynomial(terms, self.field, self.registry)

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.field is not self.field or other.registry is not self.registry:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction, GFElement)):
            return Polynomial.constant(other, self.field, self.registry)
        return None

    # -- queries ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant_value(self):
        """The raw constant term."""
        return self.terms.get(0, self.field.zero)

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get(0) == self.field.one

    def nslots(self) -> int:
        if not self.terms:
            return 0
        acc = 0
        for m in self.terms:
            acc |= m
        return (acc.bit_length() + BITS - 1) // BITS

    def variables(self) -> list[int]:
        """Registry indices of variables that occur."""
        acc = 0
        for m in self.terms:
            acc |= m
        out = []
        i = 0
        while acc:
            if acc & SLOT:
                out.append(i)
            acc >>= BITS
            i += 1
        return out

    def variable_ids(self) -> list[VariableId]:
        return [VariableId(i, self.registry.name(i), self.registry.uid) for i in self.variables()]

    def degree(self, var: int | VariableId | None = None) -> int:
        """Degree in one variable, or total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return max(mono_degree(m) for m in self.terms)
        i = var.index if isinstance(var, VariableId) else var
        return max(mono_exp(m, i) for m in self.terms)

    def leading_term(self):
        """(monomial, raw coefficient) leading under graded lex, registry order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        n = self.nslots()
        m = max(self.terms, key=lambda t: grlex_key(t, n))
        return m, self.terms[m]

    def leading_coefficient(self):
        return self.leading_term()[1]

    def sorted_terms(self):
        n = self.nslots()
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0], n), reverse=True)

    def coefficient(self, exps) -> object:
        return self.field.wrap(self.terms.get(pack(exps), self.field.zero))

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if len(o.terms) > len(self.terms):
            big, small = o.terms, self.terms
        else:
            big, small = self.terms, o.terms
        terms = dict(big)
        f = self.field
        add, zero = f.add, f.is_zero
        for m, c in small.items():
            v = terms.get(m)
            if v is None:
                terms[m] = c
            else:
                v = add(v, c)
                if zero(v):
                    del terms[m]
                else:
                    terms[m] = v
        return self._new(terms)

    __radd__ = __add__

    def __neg__(self):
        neg = self.field.neg
        return self._new({m: neg(c) for m, c in self.terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.terms, o.terms
        if not a or not b:
            return self._new({})
        if len(b) == 1:
            (mb, cb), = b.items()
            return self.mul_term(mb, cb)
        if len(a) == 1:
            (ma, ca), = a.items()
            return o.mul_term(ma, ca)
        f = self.field
        terms: dict = {}
        get = terms.get
        mod = f.native_modulus
        if mod is not None:
            # ints or Fractions under native operators, reduced once at the end
            for ma, ca in a.items():
                for mb, cb in b.items():
                    m = ma + mb
                    terms[m] = get(m, 0) + ca * cb
            if mod:
                return self._new({m: r for m, c in terms.items() if (r := c % mod)})
            return self._new({m: c for m, c in terms.items() if c})
        add, mul, zero = f.add, f.mul, f.is_zero
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = ma + mb
                v = get(m)
                terms[m] = mul(ca, cb) if v is None else add(v, mul(ca, cb))
        return self._new({m: c for m, c in terms.items() if not zero(c)})

    __rmul__ = __mul__

    def mul_term(self, m: int, c) -> Polynomial:
        f = self.field
        if f.is_zero(c):
            return self._new({})
        if c == f.one:
            return self._new({ma + m: ca for ma, ca in self.terms.items()})
        mul = f.mul
        return self._new({ma + m: mul(ca, c) for ma, ca in self.terms.items()})

    def scale(self, c) -> Polynomial:
        """Multiply by a raw field element."""
        return self.mul_term(0, c)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial exponent must be a nonnegative integer")
        if n and self.terms and self.degree() * n > MAX_EXP:
            raise OverflowError("exponent too large for the monomial encoding")
        if len(self.terms) == 1:
            (m, c), = self.terms.items()
            return self._new({m * n: self.field.pow(c, n)})
        result = Polynomial.constant(1, self.field, self.registry)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        """Exact division; scalars divide coefficientwise."""
        if isinstance(other, (int, Fraction, GFElement)):
            c = self.field.convert(other)
            if self.field.is_zero(c):
                raise DivisionByZeroError("division by zero")
            return self.scale(self.field.inv(c))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        q = self.divexact(o)
        if q is None:
            raise ValueError("inexact polynomial division")
        return q

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return (self.field is other.field and self.registry is other.registry
                    and self.terms == other.terms)
        if isinstance(other, (int, Fraction, GFElement)):
            try:
                return self.terms == Polynomial.constant(other, self.field, self.registry).terms
            except (FieldMismatchError, ZeroDivisionError):
                return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- structure ----------------------------------------------------------
    def monic(self) -> Polynomial:
        """Scale so the graded-lex leading coefficient is 1."""
        if not self.terms:
            return self
        lc = self.leading_coefficient()
        if lc == self.field.one:
            return self
        return self.scale(self.field.inv(lc))

    def monomial_content(self) -> int:
        """Packed gcd of all monomials (componentwise minimum exponent)."""
        it = iter(self.terms)
        try:
            g = next(it)
        except StopIteration:
            return 0
        for m in it:
            if not g:
                break
            g = mono_min(g, m)
        return g

    def div_monomial(self, m: int) -> Polynomial:
        return self._new({t - m: c for t, c in self.terms.items()})

    def coefficients_in(self, var: int) -> dict[int, Polynomial]:
        """View as a univariate polynomial in ``var``: {degree: coefficient polynomial}."""
        shift = BITS * var
        groups: dict[int, dict] = {}
        for m, c in self.terms.items():
            e = (m >> shift) & SLOT
            groups.setdefault(e, {})[m - (e << shift)] = c
        return {e: self._new(t) for e, t in groups.items()}

    def coefficient_in(self, var: int, k: int) -> Polynomial:
        shift = BITS * var
        return self._new({m - (k << shift): c for m, c in self.terms.items() if (m >> shift) & SLOT == k})

    def derivative(self, var: int | VariableId) -> Polynomial:
        i = var.index if isinstance(var, VariableId) else var
        shift = BITS * i
        f = self.field
        terms = {}
        for m, c in self.terms.items():
            e = (m >> shift) & SLOT
            if e:
                v = f.mul(c, f.from_int(e))
                if not f.is_zero(v):
                    terms[m - (1 << shift)] = v
        return self._new(terms)

    def evaluate(self, values: dict[int, object]) -> Polynomial:
        """Substitute raw field values for some variables (keyed by registry index)."""
        f = self.field
        powers: dict = {}
        terms: dict = {}
        for m, c in self.terms.items():
            rest = m
            coeff = c
            for i, v in values.items():
                e = (m >> (BITS * i)) & SLOT
                if e:
                    key = (i, e)
                    pv = powers.get(key)
                    if pv is None:
                        pv = powers[key] = f.pow(v, e)
                    coeff = f.mul(coeff, pv)
                    rest -= e << (BITS * i)
            if f.is_zero(coeff):
                continue
            old = terms.get(rest)
            if old is None:
                terms[rest] = coeff
            else:
                s = f.add(old, coeff)
                if f.is_zero(s):
                    del terms[rest]
                else:
                    terms[rest] = s
        return self._new(terms)

    def substitute(self, images: dict[int, Polynomial]) -> Polynomial:
        """Simultaneously replace variables (registry index -> polynomial)."""
        f = self.field
        powers: dict = {}
        acc: dict = {}
        result = self._new({})
        sub_mask = [(i, BITS * i) for i in images]
        for m, c in self.terms.items():
            rest = m
            factor = None
            for i, shift in sub_mask:
                e = (m >> shift) & SLOT
                if e:
                    rest -= e << shift
                    key = (i, e)
                    pv = powers.get(key)
                    if pv is None:
                        pv = powers[key] = images[i] ** e
                    factor = pv if factor is None else factor * pv
            if factor is None:
                v = acc.get(m)
                s = c if v is None else f.add(v, c)
                if f.is_zero(s):
                    acc.pop(m, None)
                else:
                    acc[m] = s
            else:
                result = result + factor.mul_term(rest, c)
        if acc:
            result = result + self._new(acc)
        return result

    def rename(self, mapping: dict[int, int]) -> Polynomial:
        """Apply an injective renaming of variables (registry indices)."""
        if not mapping:
            return self
        terms: dict = {}
        f = self.field
        items = list(mapping.items())
        for m, c in self.terms.items():
            new = m
            for i, _ in items:
                new -= ((m >> (BITS * i)) & SLOT) << (BITS * i)
            for i, j in items:
                e = (m >> (BITS * i)) & SLOT
                if e:
                    new += e << (BITS * j)
            v = terms.get(new)
            if v is None:
                terms[new] = c
            else:
                s = f.add(v, c)
                if f.is_zero(s):
                    del terms[new]
                else:
                    terms[new] = s
        return self._new(terms)

    def map_coefficients(self, fn, field: Field | None = None) -> Polynomial:
        field = field or self.field
        terms = {}
        for m, c in self.terms.items():
            v = fn(c)
            if not field.is_zero(v):
                terms[m] = v
        return Polynomial(terms, field, self.registry)

    # -- division -----------------------------------------------------------
    def divexact(self, other: Polynomial) -> Polynomial | None:
        """Exact quotient self/other, or None when other does not divide self."""
        if not other.terms:
            raise DivisionByZeroError("division by the zero polynomial")
        if not self.terms:
            return self
        f = self.field
        if len(other.terms) == 1:
            (mo, co), = other.terms.items()
            out = {}
            for m, c in self.terms.items():
                if not mono_divides(mo, m):
                    return None
                out[m - mo] = f.div(c, co)
            return self._new(out)
        lm = max(other.terms)
        lc = other.terms[lm]
        lc_inv = f.inv(lc)
        exact = f.characteristic == 0
        div = f.div
        rem = dict(self.terms)
        quot: dict = {}
        add, mul, neg, zero = f.add, f.mul, f.neg, f.is_zero
        others = [(m, c) for m, c in other.terms.items() if m != lm]
        while rem:
            m = max(rem)
            if not mono_divides(lm, m):
                return None
            qm = m - lm
            qc = div(rem.pop(m), lc) if exact else mul(rem.pop(m), lc_inv)
            quot[qm] = qc
            nqc = neg(qc)
            for mo, co in others:
                t = mo + qm
                v = rem.get(t)
                if v is None:
                    rem[t] = mul(nqc, co)
                else:
                    v = add(v, mul(nqc, co))
                    if zero(v):
                        del rem[t]
                    else:
                        rem[t] = v
        return self._new(quot)

    def prem(self, other: Polynomial, var: int) -> Polynomial:
        """Pseudo-remainder of self by other w.r.t. ``var``."""
        db = other.degree(var)
        if db < 0:
            raise DivisionByZeroError("pseudo-division by zero")
        shift = BITS * var
        lcb = other.coefficient_in(var, db)
        r = self
        e = r.degree(var) - db + 1
        if e <= 0:
            return r
        while r.terms:
            dr = r.degree(var)
            if dr < db:
                break
            lcr = r.coefficient_in(var, dr)
            t = lcr.mul_term((dr - db) << shift, self.field.one)
            r = r * lcb - t * other
            e -= 1
        return r * lcb**e if e else r

    # -- display ------------------------------------------------------------
    def __repr__(self):
        from .expr import format_polynomial

        return f"Polynomial({format_polynomial(self)!r}, {self.field!r})"

    def __str__(self):
        from .expr import format_polynomial

        return format_polynomial(self)


def mono_min(a: int, b: int) -> int:
    out = 0
    shift = 0
    while a and b:
        x, y = a & SLOT, b & SLOT
        out |= (x if x < y else y) << shift
        a >>= BITS
        b >>= BITS
        shift += BITS
    return out


def mono_max(a: int, b: int) -> int:
    out = 0
    shift = 0
    while a or b:
        x, y = a & SLOT, b & SLOT
        out |= (x if x > y else y) << shift
        a >>= BITS
        b >>= BITS
        shift += BITS
    return out
