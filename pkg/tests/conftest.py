import pytest

CRITERIA: dict[int, tuple[str, str, float]] = {}
_SETUP: dict[str, float] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "setup":
        _SETUP[item.nodeid] = rep.duration  # fixture work counts toward the criterion
    if rep.when == "setup" and not rep.passed or rep.when == "call":
        number, title = marker.args
        secs = rep.duration + (_SETUP.get(item.nodeid, 0.0) if rep.when == "call" else 0.0)
        CRITERIA[number] = (title, "PASS" if rep.passed else "FAIL", secs)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        title, status, secs = CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}  ({secs:.2f} s)")
