"""Brute-force isomorphism over small finite fields: apply every element of H
and look for the target quintuple.

The transform formulas are evaluated over the whole (c, d, e, f) grid at once,
with field addition and multiplication done by table lookup.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..errors import PreconditionError
from ..kernel import Field, FiniteField
from .weierstrass import HTransform, WeierstrassQuintuple, is_smooth, transform_formulas

MAX_ORDER = 32  # (q-1) q^3 transforms per curve


@lru_cache(maxsize=None)
def _tables(field: FiniteField):
    els = list(field.elements())
    add = np.array([[field.add(a, b) for b in els] for a in els], dtype=np.int64)
    mul = np.array([[field.mul(a, b) for b in els] for a in els], dtype=np.int64)
    return add, mul


@lru_cache(maxsize=None)
def _grid(field: FiniteField):
    q = field.order
    c, d, e, f = np.meshgrid(np.arange(1, q), np.arange(q), np.arange(q), np.arange(q), indexing="ij")
    return tuple(a.ravel().astype(np.int64) for a in (c, d, e, f))


def _orbit(w: WeierstrassQuintuple) -> tuple[np.ndarray, ...]:
    """The five coefficient arrays of h(w) for every h in H."""
    field = w.field
    add, mul = _tables(field)
    grid = _grid(field)
    ones = np.ones_like(grid[0])
    values = list(grid) + [ones * a for a in w.raw]
    powers: dict = {}

    def power(i, e):
        key = (i, e)
        if key not in powers:
            powers[key] = values[i] if e == 1 else mul[power(i, e - 1), values[i]]
        return powers[key]

    out = []
    for terms in transform_formulas():
        acc = np.zeros_like(ones)
        for coef, exps in terms:
            t = ones * field.from_int(coef)
            for i, e in enumerate(exps):
                if e:
                    t = mul[t, power(i, e)]
            acc = add[acc, t]
        out.append(acc)
    return tuple(out)


def _encode(arrays, q: int) -> np.ndarray:
    key = np.zeros_like(arrays[0])
    for a in arrays:
        key = key * q + a
    return key


def _encode_raw(raw, q: int) -> int:
    key = 0
    for a in raw:
        key = key * q + a
    return key


def _check_field(field: Field) -> None:
    if not isinstance(field, FiniteField):
        raise PreconditionError("brute-force isomorphism needs a finite field")
    if field.order > MAX_ORDER:
        raise PreconditionError(f"field of order {field.order} is too large for brute force (max {MAX_ORDER})")


def isomorphic_over(field: FiniteField, w1: WeierstrassQuintuple, w2: WeierstrassQuintuple) -> HTransform | None:
    """A witness h in H with h(w1) = w2, or None.  Exhaustive over (c, d, e, f)."""
    _check_field(field)
    if w1.field is not field or w2.field is not field:
        raise PreconditionError("curves must be defined over the given field")
    q = field.order
    hits = np.nonzero(_encode(_orbit(w1), q) == _encode_raw(w2.raw, q))[0]
    if not len(hits):
        return None
    c, d, e, f = (int(a[hits[0]]) for a in _grid(field))
    return HTransform(*(field.wrap(v) for v in (c, d, e, f)))


def orbit(w: WeierstrassQuintuple) -> frozenset:
    """All quintuples isomorphic to w, as raw tuples."""
    _check_field(w.field)
    return frozenset(zip(*(a.tolist() for a in _orbit(w))))


def short_orbit(w: WeierstrassQuintuple) -> frozenset:
    """Short forms (a4, a6) isomorphic to w."""
    _check_field(w.field)
    arrays = _orbit(w)
    mask = (arrays[0] == 0) & (arrays[1] == 0) & (arrays[2] == 0)
    return frozenset(zip(arrays[3][mask].tolist(), arrays[4][mask].tolist()))


def smooth_short_forms(field: FiniteField) -> list[WeierstrassQuintuple]:
    els = list(field.elements())
    curves = (WeierstrassQuintuple((0, 0, 0, a4, a6), field) for a4 in els for a6 in els)
    return [w for w in curves if is_smooth(w)]


def isomorphism_classes(curves: list[WeierstrassQuintuple]) -> list[list[WeierstrassQuintuple]]:
    """Partition by brute-force isomorphism."""
    classes: list[list] = []
    seen: dict = {}
    for w in curves:
        if w.raw in seen:
            classes[seen[w.raw]].append(w)
            continue
        idx = len(classes)
        classes.append([w])
        for r in orbit(w):
            seen.setdefault(r, idx)
    return classes
