import sys

import pytest

from polarizability import _backend


@pytest.fixture
def pure_python(monkeypatch):
    """Route every kernel call through the pure-Python fallback."""
    monkeypatch.setattr(_backend, "ckernels", None)
    yield


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
