import pytest

_RESULTS = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        detail = dict(item.user_properties).get("detail", "")
        status = "SKIP" if report.skipped else ("PASS" if report.passed else "FAIL")
        _RESULTS.append((mark.args[0], mark.args[1], status, detail))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, status, detail in sorted(_RESULTS, key=lambda r: (r[0], r[1])):
        line = f"[{status}] {number}. {title}"
        terminalreporter.write_line(f"{line}: {detail}" if detail else line)
