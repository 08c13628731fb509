import contextlib
import time

import pytest

_ACCEPTANCE = {}


@contextlib.contextmanager
def _record(number, label):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {label}  ({elapsed:.1f} s)"
        _ACCEPTANCE[number] = line
        print(line)


@pytest.fixture
def criterion():
    """``with criterion(n, label): ...`` records a pass/fail line for the summary."""
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        terminalreporter.write_line(_ACCEPTANCE[number])
