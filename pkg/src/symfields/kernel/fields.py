"""Exact coefficient fields: the rationals, prime fields and their extensions.

Polynomial arithmetic runs on *raw* values for speed (``Fraction`` for QQ, ``int``
for finite fields); :meth:`Field.wrap` turns a raw value into a user-facing
coefficient that supports the usual Python operators.

Extension fields GF(p^k) encode an element c_0 + c_1 gen + ... + c_{k-1} gen^{k-1}
(gen, a root of the field's defining polynomial) as the integer
c_0 + c_1 p + ... + c_{k-1} p^{k-1}.
"""

from __future__ import annotations

import functools
import itertools
from fractions import Fraction
from random import Random

from ..errors import DivisionByZeroError, FieldMismatchError

# Conway polynomials, coefficients listed from the constant term upwards (monic).
IRREDUCIBLES: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
    (11, 2): (2, 7, 1),
    (13, 2): (2, 12, 1),
}

_TABLE_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, k) with q = p**k, or raise ValueError."""
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1 or not is_prime(p):
                break
            return p, k
    raise ValueError(f"{q} is not a prime power")


class Field:
    """Interface shared by all coefficient fields."""

    characteristic: int
    order: int | None = None
    # 0 when raw values are Python numbers under native + and *; p when they
    # are ints reduced mod p; None otherwise
    native_modulus: int | None = None
    zero: object
    one: object

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result, base = self.one, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def is_zero(self, a) -> bool:
        return a == self.zero

    def from_int(self, n: int):
        raise NotImplementedError

    def convert(self, x):
        """Coerce ints, Fractions, numeric strings or wrapped coefficients to a raw value."""
        raise NotImplementedError

    def wrap(self, a):
        return a

    def format(self, a) -> str:
        return str(a)

    def elements(self):
        raise TypeError(f"{self} is infinite")

    def random(self, rng: Random, bound: int = 10):
        raise NotImplementedError

    def sort_key(self, a):
        return a


class RationalField(Field):
    """The rationals.  Raw values are ``int`` when integral and ``Fraction``
    otherwise; the two compare and hash alike, and integer arithmetic keeps
    fraction-free algorithms such as pseudo-remainders fast."""

    characteristic = 0
    zero = 0
    one = 1
    native_modulus = 0

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return "QQ"

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def mul(a, b):
        return a * b

    def inv(self, a):
        if not a:
            raise DivisionByZeroError("inverse of zero")
        return _normal(Fraction(1) / a)

    def div(self, a, b):
        if not b:
            raise DivisionByZeroError("division by zero")
        if type(a) is int and type(b) is int:
            q, r = divmod(a, b)
            return q if not r else Fraction(a, b)
        return _normal(Fraction(a) / b)

    def is_zero(self, a) -> bool:
        return not a

    def from_int(self, n: int):
        return int(n)

    def convert(self, x):
        if isinstance(x, GFElement):
            raise FieldMismatchError(f"cannot coerce {x!r} into QQ")
        if type(x) is int:
            return x
        if isinstance(x, str):
            x = x.strip()
        return _normal(Fraction(x))

    def wrap(self, a):
        return Fraction(a)

    def format(self, a) -> str:
        return str(a)

    def random(self, rng: Random, bound: int = 10):
        den = rng.randint(1, 3)
        return _normal(Fraction(rng.randint(-bound, bound), den))


def _normal(q: Fraction):
    return q.numerator if q.denominator == 1 else q


QQ = RationalField()


class FiniteField(Field):
    """GF(p**k). Use :func:`GF` to obtain cached instances."""

    def __init__(self, p: int, k: int = 1, modulus: tuple[int, ...] | None = None, name: str = "gen"):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be positive")
        self.p = p
        self.k = k
        self.characteristic = p
        self.order = p**k
        self.zero = 0
        self.one = 1
        self.name = name
        if k == 1:
            self.modulus = (0, 1)
            self.native_modulus = p
        else:
            modulus = tuple(modulus) if modulus else IRREDUCIBLES.get((p, k)) or _smallest_irreducible(p, k)
            if len(modulus) != k + 1 or modulus[-1] != 1 or not _is_irreducible(p, modulus):
                raise ValueError(f"{modulus} is not a monic irreducible of degree {k} over GF({p})")
            self.modulus = modulus
            self._exp: list[int] | None = None
            self._log: list[int] | None = None
            if self.order <= _TABLE_LIMIT:
                self._build_tables()

    def __repr__(self):
        return f"GF({self.p})" if self.k == 1 else f"GF({self.p}^{self.k})"

    def __reduce__(self):
        return (GF, (self.p, self.k))

    # digit helpers for extension fields
    def to_digits(self, a: int) -> list[int]:
        digits = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            digits.append(r)
        return digits

    def from_digits(self, digits) -> int:
        v = 0
        for d in reversed(list(digits)):
            v = v * self.p + d % self.p
        return v

    def _poly_mul(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        da, db = self.to_digits(a), self.to_digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        mod = self.modulus
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d] % p
            if c:
                for i in range(k + 1):
                    prod[d - k + i] -= c * mod[i]
        return self.from_digits(prod[:k])

    def _build_tables(self):
        q = self.order
        for g in range(2, q):
            exp = [1] * (q - 1)
            x = 1
            ok = True
            for i in range(1, q - 1):
                x = self._poly_mul(x, g)
                if x == 1:
                    ok = False
                    break
                exp[i] = x
            if ok:
                log = [0] * q
                for i, v in enumerate(exp):
                    log[v] = i
                self._exp, self._log = exp, log
                return
        raise AssertionError("no primitive element found")

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self.from_digits(x + y for x, y in zip(self.to_digits(a), self.to_digits(b)))

    def neg(self, a):
        if self.k == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self.from_digits(-x for x in self.to_digits(a))

    def sub(self, a, b):
        if self.k == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        if not a or not b:
            return 0
        if self._exp is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
        return self._poly_mul(a, b)

    def inv(self, a):
        if not a:
            raise DivisionByZeroError("inverse of zero")
        if self.k == 1:
            return pow(a, -1, self.p)
        if self._exp is not None:
            return self._exp[-self._log[a] % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def pow(self, a, n: int):
        if self.k == 1:
            if n < 0:
                return pow(self.inv(a), -n, self.p)
            return pow(a, n, self.p)
        if self._exp is not None and a:
            return self._exp[(self._log[a] * n) % (self.order - 1)]
        return super().pow(a, n)

    def is_zero(self, a) -> bool:
        return a == 0

    def from_int(self, n: int):
        return n % self.p

    def convert(self, x):
        if isinstance(x, GFElement):
            if x.field is not self:
                raise FieldMismatchError(f"{x!r} does not belong to {self}")
            return x.value
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            return self.div(self.from_int(x.numerator), self.from_int(x.denominator))
        if isinstance(x, str):
            return self.convert(Fraction(x.strip()))
        raise FieldMismatchError(f"cannot coerce {x!r} into {self}")

    def wrap(self, a):
        return GFElement(self, a)

    def generator(self):
        """The class of gen, a root of the defining polynomial (or 1 for prime fields)."""
        return GFElement(self, self.p if self.k > 1 else 1)

    def format(self, a) -> str:
        if self.k == 1 or a < self.p:
            return str(a)
        parts = []
        for i, d in reversed(list(enumerate(self.to_digits(a)))):
            if not d:
                continue
            mono = "" if i == 0 else (self.name if i == 1 else f"{self.name}^{i}")
            if not mono:
                parts.append(str(d))
            else:
                parts.append(mono if d == 1 else f"{d}*{mono}")
        return " + ".join(parts)

    def elements(self):
        return range(self.order)

    def random(self, rng: Random, bound: int = 10):
        return rng.randrange(self.order)


@functools.lru_cache(maxsize=None)
def GF(p: int, k: int = 1) -> FiniteField:
    """Cached finite field of order p**k."""
    return FiniteField(p, k)


def field_from_spec(text: str) -> Field:
    """Parse ``Q``, ``QQ``, ``F7``, ``F9``, ``F3^2`` or ``GF(9)`` into a field."""
    t = text.strip().replace(" ", "")
    if t.upper() in ("Q", "QQ"):
        return QQ
    for prefix in ("GF(", "F"):
        if t.upper().startswith(prefix):
            body = t[len(prefix):].rstrip(")")
            if "^" in body:
                p, k = (int(s) for s in body.split("^"))
                return GF(p, k)
            p, k = prime_power(int(body))
            return GF(p, k)
    raise ValueError(f"unrecognized field {text!r}")


class GFElement:
    """An element of a finite field supporting the arithmetic operators."""

    __slots__ = ("field", "value")

    def __init__(self, field: FiniteField, value: int):
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, GFElement):
            if other.field is not self.field:
                raise FieldMismatchError(f"{other.field} vs {self.field}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field.convert(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else GFElement(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else GFElement(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else GFElement(self.field, self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else GFElement(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else GFElement(self.field, self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else GFElement(self.field, self.field.div(o, self.value))

    def __neg__(self):
        return GFElement(self.field, self.field.neg(self.value))

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        return GFElement(self.field, self.field.pow(self.value, n))

    def __eq__(self, other):
        if isinstance(other, GFElement):
            return self.field is other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self.field.convert(other)
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field.order, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        if self.field.k != 1:
            raise TypeError("only prime-field elements convert to int")
        return self.value

    def __repr__(self):
        return f"{self.field}({self.field.format(self.value)})"

    def __str__(self):
        return self.field.format(self.value)


def coefficient_field(x) -> Field:
    """Infer the field of a user-facing coefficient."""
    if isinstance(x, GFElement):
        return x.field
    return QQ


def _poly_mod(p, a, m):
    a = [c % p for c in a]
    while a and a[-1] == 0:
        a.pop()
    inv_lead = pow(m[-1], -1, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def _is_irreducible(p: int, modulus) -> bool:
    k = len(modulus) - 1
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            if not _poly_mod(p, list(modulus), list(tail) + [1]):
                return False
    return True


def _smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    for tail in itertools.product(range(p), repeat=k):
        cand = tail + (1,)
        if cand[0] and _is_irreducible(p, cand):
            return cand
    raise AssertionError("unreachable")
