import random

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture
def rng():
    return random.Random(20240611)


ACCEPTANCE_LINES: dict[str, str] = {}


@pytest.fixture
def report():
    """Record one PASS/FAIL line per acceptance criterion."""

    def _report(criterion: str, ok: bool, detail: str) -> bool:
        line = f"criterion {criterion:>3}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES[criterion] = line
        print(line)
        return ok

    return _report


def _order(key: str):
    num = "".join(ch for ch in key if ch.isdigit())
    return int(num), key


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=_order):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
