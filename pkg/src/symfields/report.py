"""Verification reports: one record per check, JSON round-trippable."""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from typing import Callable

PASS, FAIL, ERROR = "pass", "fail", "error"


@dataclass(frozen=True)
class Outcome:
    """What a check callable returns; a bare bool is also accepted."""

    ok: bool
    lhs: str | None = None
    rhs: str | None = None
    detail: str | None = None


@dataclass(frozen=True)
class CheckRecord:
    id: str
    anchor: str
    status: str
    lhs: str | None = None
    rhs: str | None = None
    detail: str | None = None
    seconds: float = 0.0


@dataclass
class Report:
    suite: str
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, ERROR: 0}
        for r in self.records:
            out[r.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return all(r.status == PASS for r in self.records)

    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def extend(self, other: Report):
        self.records.extend(other.records)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "records": [asdict(r) for r in self.records],
            "summary": {**self.counts, "total": len(self.records)},
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: dict) -> Report:
        return cls(data["suite"], [CheckRecord(**r) for r in data["records"]])

    @classmethod
    def from_json(cls, text: str) -> Report:
        return cls.from_dict(json.loads(text))

    def table(self) -> str:
        width = max((len(r.id) for r in self.records), default=2)
        lines = []
        for r in self.records:
            line = f"{r.status.upper():5}  {r.id:<{width}}  {r.seconds:7.3f}s  {r.anchor}"
            if r.status != PASS:
                for label, value in (("lhs", r.lhs), ("rhs", r.rhs), ("detail", r.detail)):
                    if value:
                        line += f"\n       {label}: {value}"
            lines.append(line)
        c = self.counts
        lines.append(f"{self.suite}: {c[PASS]} passed, {c[FAIL]} failed, {c[ERROR]} errors")
        return "\n".join(lines)


def schema() -> dict:
    text = resources.files("symfields").joinpath("report.schema.json").read_text()
    return json.loads(text)


@dataclass(frozen=True)
class Check:
    id: str
    anchor: str
    fn: Callable[[], Outcome | bool]


def run_check(check: Check) -> CheckRecord:
    t0 = time.perf_counter()
    try:
        out = check.fn()
    except Exception as exc:  # a crashing check is reported, never raised
        return CheckRecord(check.id, check.anchor, ERROR, detail=f"{type(exc).__name__}: {exc}",
                           seconds=time.perf_counter() - t0)
    if isinstance(out, bool):
        out = Outcome(out)
    status = PASS if out.ok else FAIL
    lhs, rhs = (None, None) if out.ok else (out.lhs, out.rhs)
    return CheckRecord(check.id, check.anchor, status, lhs, rhs, out.detail,
                       seconds=time.perf_counter() - t0)


def run_checks(suite: str, checks: list[Check], workers: int = 1) -> Report:
    """Run checks (optionally in threads); records keep the input order."""
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            records = list(pool.map(run_check, checks))
    else:
        records = [run_check(c) for c in checks]
    return Report(suite, records)


def equal(lhs, rhs, detail: str | None = None) -> Outcome:
    """Exact equality of canonical forms."""
    return Outcome(lhs == rhs, str(lhs), str(rhs), detail)


def unequal(lhs, rhs, detail: str | None = None) -> Outcome:
    return Outcome(lhs != rhs, str(lhs), str(rhs), detail)
