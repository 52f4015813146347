import pytest

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by this test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    number, title = marker.args
    if hasattr(report, "wasxfail"):
        status = "XFAIL"
    else:
        status = "PASS" if report.passed else "FAIL"
    _criteria.setdefault((number, title), []).append((item.name, status))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), results in sorted(_criteria.items()):
        hard = [s for _, s in results if s != "XFAIL"]
        status = "PASS" if hard and all(s == "PASS" for s in hard) else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number}: {title}")
        for name, s in results:
            if s == "XFAIL":
                terminalreporter.write_line(f"        expected failure recorded: {name}")
