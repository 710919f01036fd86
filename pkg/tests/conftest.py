import math

import pytest

from fourpoint import from_points_lp, gen_tree_metric, new_space

ACCEPTANCE_LINES = []


@pytest.fixture
def c4():
    """4-cycle graph metric: adjacent points at 1, opposite at 2."""
    return new_space("abcd", [[0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]])


@pytest.fixture
def star():
    return gen_tree_metric([("c", "a", 1.0), ("c", "b", 1.0), ("c", "d", 1.0)])


@pytest.fixture
def line3():
    return from_points_lp([0.0, 0.5, 1.0], p=1)


@pytest.fixture
def square():
    return from_points_lp([(1, 0), (0, 1), (-1, 0), (0, -1)], p=2)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)


def approx_eq(a, b, tol):
    return math.isclose(a, b, rel_tol=0, abs_tol=tol)
