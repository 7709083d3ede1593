"""Finite-support substitutions of variables by variables, acting on rational functions."""

from __future__ import annotations

import itertools
import re
from typing import Iterable

from .errors import FieldMismatchError, NotABijectionError, NotClosedError, ParseError
from .kernel import DEFAULT_REGISTRY, RationalFunction, Registry, VariableId


class VariableMap:
    """An injective map of variables, identity off a finite support.

    Composition follows function notation: ``(s * t)(v) = s(t(v))``, so
    ``f.apply(s * t) == f.apply(t).apply(s)``.
    """

    __slots__ = ("registry", "_map")

    def __init__(self, mapping: dict | None = None, registry: Registry = DEFAULT_REGISTRY):
        self.registry = registry
        m: dict[int, int] = {}
        for k, v in (mapping or {}).items():
            i, j = _idx(registry, k), _idx(registry, v)
            if i != j:
                m[i] = j
        if len(set(m.values())) != len(m):
            raise NotABijectionError("variable map is not injective")
        self._map = m

    @classmethod
    def identity(cls, registry: Registry = DEFAULT_REGISTRY) -> VariableMap:
        return cls({}, registry)

    @classmethod
    def swap(cls, a, b, registry: Registry = DEFAULT_REGISTRY) -> VariableMap:
        return cls({a: b, b: a}, registry)

    @classmethod
    def from_cycles(cls, cycles: Iterable[Iterable], registry: Registry = DEFAULT_REGISTRY) -> VariableMap:
        """Product of cycles, rightmost applied first."""
        out = cls.identity(registry)
        for cyc in cycles:
            cyc = [_idx(registry, c) for c in cyc]
            if len(set(cyc)) != len(cyc):
                raise NotABijectionError("repeated variable inside a cycle")
            m = {cyc[i]: cyc[(i + 1) % len(cyc)] for i in range(len(cyc))}
            out = out * cls(m, registry)
        return out

    @classmethod
    def parse(cls, text: str, registry: Registry = DEFAULT_REGISTRY) -> VariableMap:
        """Cycle notation such as ``"(u v)(w z)"``; names must already be registered."""
        pos = 0
        cycles = []
        token = re.compile(r"\s*\(([^()]*)\)\s*")
        s = text.strip()
        if s in ("", "()", "id"):
            return cls.identity(registry)
        while pos < len(s):
            m = token.match(s, pos)
            if not m:
                raise ParseError("expected a cycle '(a b ...)'", pos)
            names = m.group(1).replace(",", " ").split()
            cycles.append([registry.lookup(n) for n in names])
            pos = m.end()
        return cls.from_cycles(cycles, registry)

    # -- structure ----------------------------------------------------------
    @property
    def support(self) -> frozenset[int]:
        return frozenset(self._map)

    def is_bijection(self) -> bool:
        """Whether the map permutes its support (so it lies in the symmetric group)."""
        return set(self._map.values()) == set(self._map)

    def __call__(self, v):
        i = _idx(self.registry, v)
        j = self._map.get(i, i)
        if isinstance(v, VariableId):
            return VariableId(j, self.registry.name(j), self.registry.uid)
        if isinstance(v, str):
            return self.registry.name(j)
        return j

    def __mul__(self, other: VariableMap) -> VariableMap:
        if other.registry is not self.registry:
            raise FieldMismatchError("maps over different registries")
        keys = set(self._map) | set(other._map)
        m = {}
        for k in keys:
            t = other._map.get(k, k)
            m[k] = self._map.get(t, t)
        return VariableMap(m, self.registry)

    def inverse(self) -> VariableMap:
        if not self.is_bijection():
            raise NotABijectionError("map is not a bijection of its support")
        return VariableMap({v: k for k, v in self._map.items()}, self.registry)

    def __eq__(self, other):
        return isinstance(other, VariableMap) and self.registry is other.registry and self._map == other._map

    def __hash__(self):
        return hash(frozenset(self._map.items()))

    def cycles(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for start in sorted(self._map):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            j = self._map[start]
            while j != start and j in self._map and j not in seen:
                cyc.append(j)
                seen.add(j)
                j = self._map[j]
            out.append(tuple(cyc))
        return out

    def __repr__(self):
        if not self._map:
            return "()"
        if not self.is_bijection():
            body = ", ".join(f"{self.registry.name(k)}->{self.registry.name(v)}" for k, v in sorted(self._map.items()))
            return f"VariableMap({body})"
        return "".join("(" + " ".join(self.registry.name(i) for i in c) + ")" for c in self.cycles())

    def apply(self, f: RationalFunction) -> RationalFunction:
        return apply_substitution(f, self)


def _idx(registry: Registry, v) -> int:
    if isinstance(v, VariableId):
        if v.registry_id != registry.uid:
            raise FieldMismatchError(f"variable {v} belongs to another registry")
        return v.index
    if isinstance(v, str):
        return registry.var(v).index
    return int(v)


def apply_substitution(f: RationalFunction, sigma: VariableMap) -> RationalFunction:
    """Replace every variable v of f by sigma(v)."""
    if f.registry is not sigma.registry:
        raise FieldMismatchError("function and map use different registries")
    used = set(f.variables())
    m = {k: v for k, v in sigma._map.items() if k in used}
    if not m:
        return f
    return f.rename(m)


def _check_bijective(gens):
    for g in gens:
        if not g.is_bijection():
            raise NotABijectionError(f"{g!r} is not a bijection of its support")


def is_invariant(f: RationalFunction, gens: Iterable[VariableMap]) -> bool:
    gens = list(gens)
    _check_bijective(gens)
    return all(apply_substitution(f, g) == f for g in gens)


def check_closed(group: list[VariableMap]):
    elems = set(group)
    for s, t in itertools.product(group, repeat=2):
        if s * t not in elems:
            raise NotClosedError(f"{s!r} * {t!r} is not in the list")


def orbit(f: RationalFunction, group: list[VariableMap]) -> set[RationalFunction]:
    group = list(group)
    _check_bijective(group)
    check_closed(group)
    return {apply_substitution(f, g) for g in group}


def symmetric_group(variables, registry: Registry = DEFAULT_REGISTRY) -> list[VariableMap]:
    """All permutations of the given variables."""
    vs = [_idx(registry, v) for v in variables]
    return [VariableMap(dict(zip(vs, p)), registry) for p in itertools.permutations(vs)]


def transpositions(variables, registry: Registry = DEFAULT_REGISTRY) -> list[VariableMap]:
    vs = [_idx(registry, v) for v in variables]
    return [VariableMap.swap(a, b, registry) for a, b in itertools.combinations(vs, 2)]
