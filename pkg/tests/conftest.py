import pytest

from src.numkit import make_rng, reset_tolerances
from src.scenarios import build_scenario, finite_stochastic, pcb_desk, zerosum_scenario

SEED = 20260302


@pytest.fixture
def rng():
    """Fresh Philox stream; the same numbers on every run."""
    return make_rng(SEED)


@pytest.fixture(autouse=True)
def _default_tolerances():
    yield
    reset_tolerances()


@pytest.fixture(scope="session")
def desk_pcb():
    return pcb_desk()


@pytest.fixture(scope="session")
def desk_stochastic():
    return finite_stochastic([0.5, 0.2, -0.1, -0.4])


@pytest.fixture(scope="session")
def matching_pennies():
    return zerosum_scenario([[[1.0, -1.0], [-1.0, 1.0]]], x_grid=4)


@pytest.fixture(scope="session")
def desk_zerosum():
    return build_scenario("zerosum")


@pytest.fixture(scope="session")
def desk_rot():
    return build_scenario("rot_triangle")
