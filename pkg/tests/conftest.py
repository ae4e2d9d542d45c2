from __future__ import annotations

import random
from collections import defaultdict

import pytest

from rsl.randgen import resolve_seed

_criteria: dict[int, list[bool]] = defaultdict(list)


def pytest_configure(config: pytest.Config) -> None:
    config.addinivalue_line("markers", "criterion(n): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item: pytest.Item, call: pytest.CallInfo):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        _criteria[marker.args[0]].append(report.passed)


def pytest_terminal_summary(terminalreporter, exitstatus, config) -> None:
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        results = _criteria[n]
        status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status} ({sum(results)}/{len(results)} tests)")


@pytest.fixture
def rng() -> random.Random:
    return random.Random(resolve_seed())
