import numpy as np
import pytest

from adasmatch import default_params


@pytest.fixture
def params():
    return default_params()


@pytest.fixture
def rng():
    return np.random.default_rng(20210401)


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    number, title = marker.args
    ACCEPTANCE[number] = (title, "PASS" if report.passed else "FAIL")
    # also visible inline with -s
    print(f"\ncriterion {number:>2} {ACCEPTANCE[number][1]}  {title}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, status = ACCEPTANCE[number]
        terminalreporter.write_line(f"{status}  {number:>2}. {title}")
