import pytest

from localtest import build_graph, generate

_ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    print(line)
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def triangle():
    return build_graph(3, 2, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def c12():
    return generate("cycle(12)")


@pytest.fixture
def p12():
    return generate("path(12)")


@pytest.fixture
def triangles():
    return generate("union_copies(complete(3),5)")
