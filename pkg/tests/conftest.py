"""Shared fixtures; collects acceptance results for the terminal summary."""

from __future__ import annotations

import time
from contextlib import contextmanager

import pytest

_RESULTS: dict[int, dict] = {}


class _Criterion:
    def __init__(self, number: int, title: str, budget: float):
        self.number = number
        self.title = title
        self.budget = budget
        self.notes: list[str] = []

    def note(self, text: str) -> None:
        self.notes.append(text)


@contextmanager
def _run_criterion(number: int, title: str, budget: float):
    crit = _Criterion(number, title, budget)
    entry = _RESULTS.setdefault(number, {"title": title, "budget": budget, "ok": True,
                                         "seconds": 0.0, "notes": []})
    t0 = time.perf_counter()
    ok = False
    try:
        yield crit
        ok = True
    finally:
        elapsed = time.perf_counter() - t0
        entry["seconds"] += elapsed
        entry["notes"] += crit.notes
        entry["ok"] = entry["ok"] and ok and entry["seconds"] <= budget
        if ok and entry["seconds"] > budget:
            entry["notes"].append(f"over budget: {entry['seconds']:.1f}s > {budget:.0f}s")


@pytest.fixture
def criterion():
    return _run_criterion


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        r = _RESULTS[number]
        status = "PASS" if r["ok"] else "FAIL"
        terminalreporter.write_line(
            f"criterion {number}: {status}  {r['title']}  ({r['seconds']:.2f}s of {r['budget']:.0f}s)")
