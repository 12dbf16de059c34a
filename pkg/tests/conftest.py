import pytest

from bsgraph.graph import build


@pytest.fixture
def b42():
    return build(4, 2)


@pytest.fixture
def b53():
    return build(5, 3)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
