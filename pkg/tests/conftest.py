import time
from contextlib import contextmanager

import pytest

_ACCEPTANCE = {}


class _Record:
    detail = ""


@pytest.fixture
def criterion():
    """Context manager that times a criterion and records PASS/FAIL."""

    @contextmanager
    def run(number, title, limit=None):
        rec = _Record()
        start = time.perf_counter()
        try:
            yield rec
        except BaseException as exc:
            elapsed = time.perf_counter() - start
            msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
            _report(number, title, False, f"{msg} ({elapsed:.2f}s)")
            raise
        elapsed = time.perf_counter() - start
        if limit is not None and elapsed >= limit:
            _report(number, title, False, f"took {elapsed:.2f}s, limit {limit}s")
            raise AssertionError(f"criterion {number} took {elapsed:.2f}s (limit {limit}s)")
        _report(number, title, True, f"{rec.detail} ({elapsed:.2f}s)".strip())

    return run


def _report(number, title, passed, detail):
    line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {title} -- {detail}"
    _ACCEPTANCE[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        terminalreporter.write_line(_ACCEPTANCE[number])
