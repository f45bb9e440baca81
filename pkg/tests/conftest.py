import pytest

_CRITERIA = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    failed = call.excinfo is not None
    _CRITERIA[number] = (title, "FAIL" if failed else "PASS", round(call.duration, 1))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion reported in the summary")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, verdict, seconds = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {verdict}  {title}  ({seconds}s)")
