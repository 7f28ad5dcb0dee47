import pytest

_RESULTS = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion with a pass/fail line")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        _RESULTS.append((marker.args[0], report.passed, getattr(item, "detail", "")))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _RESULTS:
        line = f"{'PASS' if ok else 'FAIL'}  {label}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
