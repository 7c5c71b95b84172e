import pytest

from jumpconvex import DiscreteFunction, PointSet
from jumpconvex.generators import FIXTURE_SETS, unit_square_fn


@pytest.fixture
def even_pair():
    return FIXTURE_SETS["even-pair"]


@pytest.fixture
def gap_set():
    return FIXTURE_SETS["gap"]


@pytest.fixture
def tri_set():
    return FIXTURE_SETS["triangle"]


@pytest.fixture
def square_fn():
    """The unit-square function with a=1, b=0."""
    return unit_square_fn(1, 0)


@pytest.fixture
def ind02():
    return DiscreteFunction.indicator(PointSet([(0,), (2,)]))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
