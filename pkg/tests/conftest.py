import pytest

from hyperx.genlab import loose_cycle, loose_path, single_edge, star
from hyperx.hypercore import build

FANO_EDGES = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]


@pytest.fixture
def fano():
    return build(3, 7, FANO_EDGES)


@pytest.fixture
def path2():
    """The 5-vertex loose path with two 3-edges."""
    return loose_path(2, 3)


@pytest.fixture
def edge3():
    return single_edge(3)


@pytest.fixture
def triangle3():
    """Three 3-edges pairwise meeting in distinct vertices: a loose 3-cycle."""
    return loose_cycle(3, 3)


@pytest.fixture
def star3():
    return star(3, 3)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_line():
    """Record one PASS/FAIL line per acceptance criterion; echoed in the terminal summary."""

    def record(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
