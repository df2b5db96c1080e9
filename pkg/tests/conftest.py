import numpy as np
import pytest

from fockherald.fock import TwoModeState, pair_index
from fockherald.optics import ParamSet

ACCEPTANCE_LINES = []


@pytest.fixture
def fig2():
    """The reference point r = 0.7, eta = 0.2, T = 0.7."""
    return ParamSet(0.7, 0.2, 0.7)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_density_matrix(rng, dim, rank=None):
    rank = rank or dim
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def low_number_state(rng, n_low, n_max):
    """Random density matrix supported on photon numbers <= n_low, embedded at n_max."""
    small = random_density_matrix(rng, (n_low + 1) ** 2)
    idx = [pair_index(a, b, n_max) for a in range(n_low + 1) for b in range(n_low + 1)]
    m = np.zeros(((n_max + 1) ** 2,) * 2, dtype=complex)
    m[np.ix_(idx, idx)] = small
    return TwoModeState(n_max, m)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
