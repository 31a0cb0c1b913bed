import sys

import pytest
from hypothesis import settings

from odeq import disguise, parse_equation
from odeq.fieldtower import z

settings.register_profile("odeq", deadline=None, max_examples=25, derandomize=True)
settings.load_profile("odeq")

STANDARD = "S^2 - (T-1)*(T-2)*(T-3)*(T-4)*(T-5)*(T-6)"


@pytest.fixture(scope="session")
def standard():
    return parse_equation(STANDARD)


@pytest.fixture(scope="session")
def disguised(standard):
    return disguise(standard, "scaleT", 1 / z)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        title, ok = results[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}")
