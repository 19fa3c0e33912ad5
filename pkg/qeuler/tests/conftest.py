import itertools

import pytest

from qeuler.gw import GWTable
from qeuler.qring import RingContext
from qeuler.space import validate_space


def grid():
    """Every Fano (r, m) with 3 <= r <= 6, one or two equations, 2 <= m_i <= 4."""
    out = []
    for r in range(3, 7):
        for codim in (1, 2):
            for degrees in itertools.combinations_with_replacement(range(2, 5), codim):
                if sum(degrees) <= r + codim:
                    out.append((r, degrees))
    return out


GRID = grid()
BORDERLINE_GRID = [(r, m) for r, m in GRID if sum(m) == r + len(m)]


def grid_id(case):
    r, degrees = case
    return f"r{r}-m{'.'.join(map(str, degrees))}"


@pytest.fixture(params=GRID, ids=grid_id)
def grid_space(request):
    r, degrees = request.param
    return validate_space(r, degrees)


@pytest.fixture(params=BORDERLINE_GRID, ids=grid_id)
def borderline_space(request):
    r, degrees = request.param
    return validate_space(r, degrees)


def context_and_table(r, degrees):
    space = validate_space(r, degrees)
    return RingContext(space), GWTable(space)


@pytest.fixture
def quadric():
    return context_and_table(3, [2])


@pytest.fixture
def cubic():
    return context_and_table(3, [3])


@pytest.fixture
def quartic():
    return context_and_table(3, [4])
