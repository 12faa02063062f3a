import pytest

import curvebound as cb


@pytest.fixture(scope="session")
def bump():
    return cb.make_gaussian_bump(1.0, 1.0, 400.0)


@pytest.fixture(scope="session")
def deep_bump():
    return cb.make_gaussian_bump(6.0, 1.0, 400.0)


@pytest.fixture(scope="session")
def solved_m0(bump):
    # converged ground state, reused across tests to keep runtime down
    return cb.solve_bound_states_rho(bump, 0)
