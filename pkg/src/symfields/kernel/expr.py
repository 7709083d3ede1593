"""Infix expression parser and the canonical printer.

Grammar::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' uint)?
    base   := ident | integer | '(' expr ')' | '-' base

Note that ``-x^2`` parses as ``(-x)^2``; the printer never emits that shape for
a negative leading term.  Over an extension field the identifier equal to the
field's generator name (``gen`` by default) denotes the generator.
"""

from __future__ import annotations

import re

from ..errors import DivisionByZeroError, ParseError
from .fields import QQ, Field, FiniteField
from .polynomial import BITS, SLOT, Polynomial
from .rational import RationalFunction
from .registry import DEFAULT_REGISTRY, Registry

# -- printing -------------------------------------------------------------------


def _monomial(m: int, registry: Registry) -> tuple[str, int]:
    """Render a packed monomial; also return the exponent of its first variable."""
    parts = []
    first = 0
    i = 0
    while m:
        e = m & SLOT
        if e:
            if not parts:
                first = e
            name = registry.name(i)
            parts.append(name if e == 1 else f"{name}^{e}")
        m >>= BITS
        i += 1
    return "*".join(parts), first


def _coefficient(field: Field, c) -> tuple[bool, str]:
    """(negative, magnitude text); magnitude '' stands for 1."""
    if field is QQ:
        neg = c < 0
        a = -c if neg else c
        if a == 1:
            return neg, ""
        if a.denominator == 1:
            return neg, str(a.numerator)
        return neg, f"({a.numerator}/{a.denominator})"
    if c == 1:
        return False, ""
    text = field.format(c)
    if "+" in text:
        text = f"({text})"
    return False, text


def format_polynomial(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    f = p.field
    out = []
    for k, (m, c) in enumerate(p.sorted_terms()):
        neg, mag = _coefficient(f, c)
        if m == 0:
            body = mag or "1"
        else:
            mono, first = _monomial(m, p.registry)
            if mag:
                body = f"{mag}*{mono}"
            elif neg and k == 0 and first > 1:
                body = f"1*{mono}"
            else:
                body = mono
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def _is_atom(p: Polynomial) -> bool:
    if len(p.terms) != 1:
        return False
    (m, c), = p.terms.items()
    if m == 0:
        return p.field is not QQ or c >= 0
    return c == p.field.one and len(p.variables()) == 1


def format_rational(r: RationalFunction) -> str:
    num = format_polynomial(r.num)
    if r.den.is_one():
        return num
    den = format_polynomial(r.den)
    if len(r.num.terms) > 1:
        num = f"({num})"
    if not _is_atom(r.den):
        den = f"({den})"
    return f"{num}/{den}"


def print_canonical(f: RationalFunction | Polynomial) -> str:
    if isinstance(f, Polynomial):
        return format_polynomial(f)
    return format_rational(f)


# -- parsing --------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, text, registry, field, closed):
        self.toks = _tokenize(text)
        self.i = 0
        self.registry = registry
        self.field = field
        self.closed = closed
        self.gen = field.name if isinstance(field, FiniteField) and field.k > 1 else None

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value):
        t = self.take()
        if t[1] != value:
            raise ParseError(f"expected {value!r}, found {t[1] or 'end of input'!r}", t[2])
        return t

    def const(self, c) -> RationalFunction:
        return RationalFunction.constant(c, self.field, self.registry)

    def expr(self):
        acc = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.factor()
        while self.peek()[1] in ("*", "/"):
            _, op, pos = self.take()
            rhs = self.factor()
            if op == "*":
                acc = acc * rhs
            elif rhs.is_zero():
                raise DivisionByZeroError(f"division by zero at position {pos}")
            else:
                acc = acc / rhs
        return acc

    def factor(self):
        b = self.base()
        if self.peek()[1] == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "int":
                if val == "-":
                    raise ParseError("negative exponent", pos)
                raise ParseError("exponent must be a nonnegative integer", pos)
            b = b ** int(val)
        return b

    def base(self):
        kind, val, pos = self.take()
        if kind == "int":
            return self.const(int(val))
        if kind == "ident":
            if val == self.gen:
                return self.const(self.field.generator())
            if self.closed:
                v = self.registry.lookup(val)
            else:
                v = self.registry.var(val)
            return RationalFunction.var(v, self.field, self.registry)
        if val == "(":
            e = self.expr()
            self.expect(")")
            return e
        if val == "-":
            return -self.base()
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def parse_expr(text: str, registry: Registry = DEFAULT_REGISTRY, field: Field = QQ, *,
               closed: bool = False) -> RationalFunction:
    """Parse ``text`` into a canonical rational function.

    With ``closed=True`` identifiers must already be registered.
    """
    p = _Parser(text, registry, field, closed)
    if p.peek()[0] == "end":
        raise ParseError("empty expression", 0)
    out = p.expr()
    kind, val, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {val!r}", pos)
    return out


def rf_make(num, den=None) -> RationalFunction:
    """Canonical num/den; raises DivisionByZeroError when den is zero."""
    if isinstance(num, RationalFunction) or isinstance(den, RationalFunction):
        return num / den if den is not None else num
    return RationalFunction(num, den)


def rf_eval(f: RationalFunction, assignment: dict):
    return f.evaluate(assignment)


__all__ = ["format_polynomial", "format_rational", "print_canonical", "parse_expr", "rf_make", "rf_eval"]
