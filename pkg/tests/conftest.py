import pytest
from hypothesis import settings

# first calls may pay for numba compilation or cache loading
settings.register_profile("agcycles", deadline=None)
settings.load_profile("agcycles")

_CRITERIA: dict[int, tuple[str, str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    n, title = mark.args
    _CRITERIA[n] = ("PASS" if rep.passed else "FAIL", title, rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        status, title, dt = _CRITERIA[n]
        terminalreporter.write_line(f"{status} criterion {n}: {title} ({dt:.2f} s)")
