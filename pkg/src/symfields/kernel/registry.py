"""Append-only registries of named variables."""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass

from ..errors import UnknownVariableError


@dataclass(frozen=True)
class VariableId:
    index: int
    name: str
    registry_id: int

    def __repr__(self):
        return self.name

    def __lt__(self, other):
        return self.index < other.index


class Registry:
    """Maps variable names to stable indices; indices fix the monomial order."""

    _counter = 0
    _counter_lock = threading.Lock()

    def __init__(self):
        with Registry._counter_lock:
            Registry._counter += 1
            self.uid = Registry._counter
        self._lock = threading.Lock()
        self._names: list[str] = []
        self._index: dict[str, int] = {}

    def __repr__(self):
        return f"Registry({len(self._names)} variables)"

    def __len__(self):
        return len(self._names)

    def __contains__(self, name: str):
        return name in self._index

    def var(self, name: str) -> VariableId:
        """Return the variable called ``name``, registering it if new."""
        idx = self._index.get(name)
        if idx is None:
            with self._lock:
                idx = self._index.get(name)
                if idx is None:
                    _check_name(name)
                    idx = len(self._names)
                    self._names.append(name)
                    self._index[name] = idx
        return VariableId(idx, name, self.uid)

    def vars(self, names) -> list[VariableId]:
        if isinstance(names, str):
            names = names.replace(",", " ").split()
        return [self.var(n) for n in names]

    def lookup(self, name: str) -> VariableId:
        """Like :meth:`var` but never registers."""
        try:
            return VariableId(self._index[name], name, self.uid)
        except KeyError:
            raise UnknownVariableError(name) from None

    def name(self, index: int) -> str:
        return self._names[index]

    def fresh(self, stem: str) -> VariableId:
        """Register a new variable whose name starts with ``stem``."""
        with self._lock:
            i = 0
            name = stem
            while name in self._index:
                i += 1
                name = f"{stem}_{i}"
            _check_name(name)
            idx = len(self._names)
            self._names.append(name)
            self._index[name] = idx
        return VariableId(idx, name, self.uid)


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _check_name(name: str):
    if not _NAME.fullmatch(name):
        raise ValueError(f"invalid variable name {name!r}")


DEFAULT_REGISTRY = Registry()
