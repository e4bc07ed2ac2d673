import math

import pytest

from calculators.nonlinearity import builtin
from calculators.orbit import solve_all
from calculators.periodmap import crossings, sample


@pytest.fixture(scope="session")
def identity():
    """f = eta, the linear center with T_f = 2*pi."""
    return builtin("linear", {"alpha": 1.0})


@pytest.fixture(scope="session")
def quarter_wave():
    """f = -(pi/2) eta; T_f = 4 and x(t) = cos(pi t / 2) solves the DDE."""
    return builtin("linear", {"alpha": -math.pi / 2})


@pytest.fixture(scope="session")
def cubic():
    """f = eta + eta^3, positive feedback, hard spring."""
    return builtin("cubic_hard", {"alpha": 1.0})


@pytest.fixture(scope="session")
def tanh2():
    """f = -2 tanh(eta), negative feedback, soft spring."""
    return builtin("tanh_soft", {"alpha": -2.0})


@pytest.fixture(scope="session")
def cubic_table(cubic):
    return sample(cubic, a_max=5.0, m=32)


@pytest.fixture(scope="session")
def tanh2_table(tanh2):
    return sample(tanh2, a_max=5.0, m=32)


@pytest.fixture(scope="session")
def cubic_orbits(cubic, cubic_table):
    return solve_all(cubic, crossings(cubic_table, 2))


@pytest.fixture(scope="session")
def tanh2_orbit(tanh2, tanh2_table):
    records = solve_all(tanh2, crossings(tanh2_table, 1))
    assert len(records) == 1
    return records[0]


@pytest.fixture(scope="session")
def cubic_orbit(cubic_orbits):
    return next(r for r in cubic_orbits if r.n == 1)
