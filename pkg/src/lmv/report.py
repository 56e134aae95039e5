"""Verification reports and their JSON / text renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO

__all__ = ["Check", "VerificationReport", "ReportSchemaError", "emit_report", "STATUSES"]

STATUSES = ("pass", "fail", "informational-pass", "informational-fail", "skipped")
RESOURCE_PREFIX = "resource-exhausted"


class ReportSchemaError(ValueError):
    pass


@dataclass
class Check:
    name: str
    status: str
    detail: str = ""
    ms: int = 0

    @property
    def resource_exhausted(self) -> bool:
        return self.status == "fail" and self.detail.startswith(RESOURCE_PREFIX)


@dataclass
class VerificationReport:
    spec: dict
    checks: list[Check] = field(default_factory=list)

    def add(self, check: Check) -> None:
        if check.status not in STATUSES:
            raise ReportSchemaError(f"unknown status {check.status!r}")
        if any(c.name == check.name for c in self.checks):
            raise ReportSchemaError(f"duplicate check name {check.name!r}")
        self.checks.append(check)

    @property
    def overall(self) -> str:
        return "fail" if any(c.status == "fail" for c in self.checks) else "pass"

    @property
    def passed(self) -> bool:
        return self.overall == "pass"

    def exit_code(self) -> int:
        if any(c.resource_exhausted for c in self.checks):
            return 3
        return 0 if self.passed else 1

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self, timings: bool = True) -> dict:
        if not self.checks:
            raise ReportSchemaError("a report needs at least one check")
        checks = []
        for c in self.checks:
            entry = {"name": c.name, "status": c.status, "detail": c.detail}
            entry["ms"] = c.ms if timings else 0
            checks.append(entry)
        spec = {k: self.spec[k] for k in ("n", "r", "p", "u")}
        return {"spec": spec, "checks": checks, "overall": self.overall}

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), indent=2) + "\n"

    def to_text(self, timings: bool = True) -> str:
        data = self.to_dict(timings)
        spec = data["spec"]
        width = max(24, max(len(c["name"]) for c in data["checks"]))
        lines = [
            f"spec: n={spec['n']} r={spec['r']} p={spec['p']} u={spec['u']}",
            f"{'CHECK':<{width}}  {'STATUS':<18}  {'MS':>8}  DETAIL",
        ]
        for c in data["checks"]:
            lines.append(f"{c['name']:<{width}}  {c['status']:<18}  {c['ms']:>8}  {c['detail']}")
        lines.append(f"overall: {data['overall']}")
        return "\n".join(lines) + "\n"


def emit_report(report: VerificationReport, fmt: str, sink: IO[str], timings: bool = True) -> None:
    if fmt == "json":
        text = report.to_json(timings)
    elif fmt == "text":
        text = report.to_text(timings)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    sink.write(text)
