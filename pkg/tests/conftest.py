import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from quiverbench import registry  # noqa: E402

# criterion number -> (verdict, detail); filled by test_acceptance
ACCEPTANCE: dict = {}


@pytest.fixture(scope="session")
def reg():
    return registry


@pytest.fixture(scope="session")
def sphere5():
    return registry.presentation("sphere5")


@pytest.fixture(scope="session")
def a1():
    return registry.presentation("a1")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        verdict, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if verdict else 'FAIL'}  {detail}")
