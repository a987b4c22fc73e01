import time
from contextlib import contextmanager

import pytest

_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, seconds): acceptance criterion with a runtime budget")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (report.when != "call" and not (report.when == "setup" and report.failed)):
        return
    number, title, seconds = mark.args
    _RESULTS[number] = (title, report.passed, report.duration, seconds)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, passed, duration, seconds = _RESULTS[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number:>2}: {title} ({duration:.2f}s, budget {seconds}s)")


@contextmanager
def budget(seconds: float):
    """Fail if the enclosed block runs longer than ``seconds``."""
    t0 = time.perf_counter()
    yield
    elapsed = time.perf_counter() - t0
    assert elapsed < seconds, f"took {elapsed:.1f}s, budget {seconds}s"
