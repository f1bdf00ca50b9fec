from __future__ import annotations

import re

CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")
_outcomes: dict[str, tuple[int, str, str, float]] = {}


def pytest_runtest_logreport(report):
    m = CRITERION.search(report.nodeid)
    if not m:
        return
    key = report.nodeid
    number, label = int(m.group(1)), m.group(2)
    if report.when == "call" or report.outcome != "passed":
        status = "PASS" if report.outcome == "passed" else "FAIL"
        prev = _outcomes.get(key)
        if prev is None or prev[2] == "PASS":
            _outcomes[key] = (number, label, status, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number, label, status, duration in sorted(_outcomes.values()):
        terminalreporter.write_line(f"criterion {number}: {status}  {label.replace('_', ' ')}  ({duration:.1f}s)")
