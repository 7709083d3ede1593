"""Named verification suites, as run by ``symfields verify-suite``."""

from __future__ import annotations

from typing import Callable

from . import alpha, divdiff, invariant_fields, lie, wp
from .elliptic import suite as ec
from .kernel import suite as kernel
from .report import Report


def _alg_sub_kpsi(seed: int) -> Report:
    return invariant_fields.verify_identity_suite("alg-sub-kpsi")


SUITES: dict[str, Callable[[int], Report]] = {
    "kernel": lambda seed: kernel.run_suite(seed),
    "invariant-fields": lambda seed: invariant_fields.run_suite(),
    "alg-sub-kpsi": _alg_sub_kpsi,
    "lie": lambda seed: lie.run_suite(seed),
    "divdiff": lambda seed: divdiff.run_suite(seed),
    "ec": lambda seed: ec.run_suite(seed),
    "wp": lambda seed: wp.run_suite(seed),
    "alpha": lambda seed: alpha.run_suite(seed),
}

# alg-sub-kpsi is a subset of invariant-fields, so "all" skips it
ALL = ("kernel", "invariant-fields", "lie", "divdiff", "ec", "wp", "alpha")


def suite_names() -> list[str]:
    return ["all", *SUITES]


def run_suite(name: str, seed: int = 0) -> Report:
    """Run a named suite; raises KeyError for an unknown name."""
    if name == "all":
        report = Report("all")
        for n in ALL:
            report.extend(SUITES[n](seed))
        return report
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](seed)
