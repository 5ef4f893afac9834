"""Shared fixtures: acceptance outcome lines surfaced in the run summary."""

import contextlib
import time

import pytest

_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion.

    Usage:
        with acceptance("3/9 m_X golden values"):
            assert ...
    The line lands in a dedicated section of the terminal summary, so the
    verdicts are readable without -s even though stdout is captured.
    """

    @contextlib.contextmanager
    def record(label):
        start = time.monotonic()
        try:
            yield
        except BaseException:
            elapsed = time.monotonic() - start
            _ACCEPTANCE_LINES.append(f"FAIL  {label}  ({elapsed:.1f}s)")
            raise
        elapsed = time.monotonic() - start
        _ACCEPTANCE_LINES.append(f"PASS  {label}  ({elapsed:.1f}s)")

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
