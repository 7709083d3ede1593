import jsonschema
import pytest

from symfields.report import (
    ERROR,
    FAIL,
    PASS,
    Check,
    Outcome,
    Report,
    equal,
    run_checks,
    schema,
    unequal,
)


def boom():
    raise ZeroDivisionError("nope")


CHECKS = [
    Check("a", "anchor a", lambda: True),
    Check("b", "anchor b", lambda: equal(1, 2, "mismatch")),
    Check("c", "anchor c", boom),
    Check("d", "anchor d", lambda: unequal("x", "y")),
]


def test_statuses_and_order():
    report = run_checks("demo", CHECKS)
    assert [r.id for r in report.records] == ["a", "b", "c", "d"]
    assert [r.status for r in report.records] == [PASS, FAIL, ERROR, PASS]
    assert report.counts == {PASS: 2, FAIL: 1, ERROR: 1}
    assert not report.ok and report.exit_code() == 1
    b = report.records[1]
    assert (b.lhs, b.rhs, b.detail) == ("1", "2", "mismatch")
    assert report.records[2].detail == "ZeroDivisionError: nope"


def test_passing_report_hides_sides():
    report = run_checks("ok", [Check("x", "anchor", lambda: Outcome(True, "l", "r"))])
    assert report.ok and report.exit_code() == 0
    assert report.records[0].lhs is None


@pytest.mark.parametrize("workers", [1, 4])
def test_threaded_run_keeps_order(workers):
    checks = [Check(f"c{i}", "anchor", lambda i=i: i % 3 != 0) for i in range(20)]
    report = run_checks("threads", checks, workers=workers)
    assert [r.id for r in report.records] == [c.id for c in checks]
    assert [r.status for r in report.records] == [FAIL if i % 3 == 0 else PASS for i in range(20)]


def test_json_round_trip_and_schema():
    report = run_checks("demo", CHECKS)
    data = report.to_dict()
    jsonschema.validate(data, schema())
    assert data["summary"] == {PASS: 2, FAIL: 1, ERROR: 1, "total": 4}
    again = Report.from_json(report.to_json())
    assert again == report


def test_schema_rejects_bad_status():
    data = run_checks("demo", CHECKS[:1]).to_dict()
    data["records"][0]["status"] = "maybe"
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(data, schema())


def test_table_lists_failures():
    text = run_checks("demo", CHECKS).table()
    assert "lhs: 1" in text and "rhs: 2" in text
    assert text.splitlines()[-1] == "demo: 2 passed, 1 failed, 1 errors"


def test_empty_report():
    report = Report("empty")
    assert report.ok and report.table() == "empty: 0 passed, 0 failed, 0 errors"
