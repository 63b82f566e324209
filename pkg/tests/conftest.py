from collections import defaultdict

import pytest

_outcomes = defaultdict(list)


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _outcomes[crit].append(report.outcome == "passed")


@pytest.fixture(autouse=True)
def _tag_criterion(request):
    mark = request.node.get_closest_marker("criterion")
    if mark is not None:
        request.node.user_properties.append(("criterion", mark.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_outcomes):
        runs = _outcomes[crit]
        status = "PASS" if runs and all(runs) else "FAIL"
        terminalreporter.write_line(f"criterion {crit}: {status} ({sum(runs)}/{len(runs)} checks)")
