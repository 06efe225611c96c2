from __future__ import annotations

import time

import pytest

_results: dict[int, tuple[str, str, float]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_call(item):
    start = time.perf_counter()
    yield
    item.user_properties.append(("elapsed", time.perf_counter() - start))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when not in ("setup", "call"):
        return
    if report.when == "setup" and report.passed:
        return
    number, title = marker.args
    elapsed = dict(item.user_properties).get("elapsed", 0.0)
    status = "PASS" if report.passed else "FAIL"
    _results[number] = (status, title, elapsed)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        status, title, elapsed = _results[number]
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {title}  ({elapsed:.2f}s)")
