import io
import json

import pytest

from lmv.report import Check, ReportSchemaError, VerificationReport, emit_report

SPEC = {"n": 4, "r": 2, "p": 3, "u": 1}


def _report(*statuses):
    rep = VerificationReport(dict(SPEC))
    for i, s in enumerate(statuses):
        rep.add(Check(f"c{i}", s, "detail", 5))
    return rep


def test_pass_report_json():
    sink = io.StringIO()
    emit_report(_report("pass", "pass"), "json", sink)
    data = json.loads(sink.getvalue())
    assert data["overall"] == "pass"
    assert data["spec"] == SPEC
    assert set(data["checks"][0]) == {"name", "status", "detail", "ms"}


def test_informational_fail_does_not_fail():
    rep = _report("pass", "informational-fail", "pass")
    assert rep.overall == "pass" and rep.exit_code() == 0


def test_fail_and_resource_codes():
    assert _report("pass", "fail").exit_code() == 1
    rep = VerificationReport(dict(SPEC))
    rep.add(Check("x", "fail", "resource-exhausted: processed 5 pairs (limit 5)"))
    assert rep.exit_code() == 3


def test_empty_report_is_schema_error():
    with pytest.raises(ReportSchemaError):
        emit_report(VerificationReport(dict(SPEC)), "json", io.StringIO())
    with pytest.raises(ReportSchemaError):
        VerificationReport(dict(SPEC)).to_text()


def test_duplicate_and_unknown_status():
    rep = _report("pass")
    with pytest.raises(ReportSchemaError):
        rep.add(Check("c0", "pass"))
    with pytest.raises(ReportSchemaError):
        rep.add(Check("other", "ok"))


def test_deterministic_minus_timings():
    a, b = _report("pass", "fail"), _report("pass", "fail")
    b.checks[0].ms = 999
    assert a.to_json(timings=False) == b.to_json(timings=False)
    assert a.to_text(timings=False) == b.to_text(timings=False)
    assert a.to_json() != b.to_json()


def test_text_table():
    text = _report("pass", "informational-pass").to_text()
    lines = text.splitlines()
    assert lines[0] == "spec: n=4 r=2 p=3 u=1"
    assert lines[1].startswith("CHECK")
    assert lines[-1] == "overall: pass"
    col = lines[1].index("STATUS")
    assert all(line[col:].startswith(("pass", "informational")) for line in lines[2:-1])


def test_unknown_format():
    with pytest.raises(ValueError):
        emit_report(_report("pass"), "yaml", io.StringIO())
