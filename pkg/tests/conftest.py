"""Prints one PASS/FAIL line per acceptance criterion after the run."""

import pytest

_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, budget): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        number, title, budget = mark.args
        _results[number] = (title, report.outcome, report.duration, budget)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        title, outcome, duration, budget = _results[number]
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line("criterion %2d %s  %-40s %6.2fs (budget %ds)"
                                    % (number, status, title, duration, budget))
