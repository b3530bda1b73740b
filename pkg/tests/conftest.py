import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from parity_ca import LocalRule, bfo, elementary  # noqa: E402


@pytest.fixture(scope="session")
def rule_bfo():
    return bfo()


@pytest.fixture(scope="session")
def rule150():
    return elementary(150)


@pytest.fixture(scope="session")
def identity1():
    return LocalRule.identity(1)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[key])
