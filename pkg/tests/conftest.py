import pytest

from kantcheck.fixtures import FIXTURES, load_fixture

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def models():
    return {name: load_fixture(name) for name in FIXTURES}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
