import time

import numpy as np
import pytest

ACCEPTANCE_LINES: list[str] = []
SUITE_BUDGET_S = 120.0
_START = {}


def pytest_sessionstart(session):
    _START["t"] = time.perf_counter()


def pytest_sessionfinish(session, exitstatus):
    elapsed = time.perf_counter() - _START.get("t", time.perf_counter())
    _START["elapsed"] = elapsed
    if elapsed > SUITE_BUDGET_S and session.exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    elapsed = _START.get("elapsed")
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
    if elapsed is not None:
        ok = elapsed <= SUITE_BUDGET_S
        terminalreporter.write_line(
            f"[{'PASS' if ok else 'FAIL'}] AC10-runtime: full suite {elapsed:.1f} s (budget {SUITE_BUDGET_S:.0f} s)"
        )


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)
