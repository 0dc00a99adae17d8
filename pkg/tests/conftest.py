import pytest

from deptree.fixtures import fig2_arrangement, t1_tree

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def t1():
    return t1_tree()


@pytest.fixture(scope="session")
def fig2():
    return fig2_arrangement()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
