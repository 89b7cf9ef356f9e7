"""
Concentration experiments: play one arm tau times in a row and measure how
often the empirical mean lands at distance >= delta from the flat
{y : F_{x theta} y = 0, mu.y = 1} of the true hypothesis.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from src.certificates import concentration_bound_general, concentration_bound_simplex, family_dims
from src.geometry import AffineSubspace, dist_point_to_affine
from src.logger.logging_config import get_logger
from src.logger.timing import Timer
from src.model import f_matrix
from src.nature import NaturePolicy
from src.scenarios import Scenario

logger = get_logger(__name__)


@dataclass
class ConcentrationResult:
    tau: int
    delta: float
    reps: int
    violation_rate: float
    simplex_bound: float | None
    general_bound: float

    def to_dict(self) -> dict:
        return asdict(self)


def credal_flat(scenario: Scenario, theta: int, x: int) -> AffineSubspace:
    fam, space = scenario.family, scenario.space
    a = np.vstack([f_matrix(fam, x, theta), space.mu])
    b = np.zeros(a.shape[0])
    b[-1] = 1.0
    return AffineSubspace.from_equations(a, b)


def concentration_experiment(
    scenario: Scenario,
    theta: int,
    nature: NaturePolicy,
    x: int,
    tau: int,
    delta: float,
    reps: int,
    seed: int,
) -> ConcentrationResult:
    """
    Empirical violation rate next to the two theoretical bounds.

    Parameters:
        scenario (Scenario): The scenario.
        theta (int): True hypothesis index.
        nature (NaturePolicy): A compatible nature; reset per repetition.
        x (int): The arm played tau times.
        tau (int): Run length, at least 1.
        delta (float): Distance threshold.
        reps (int): Repetitions; repetition r uses seed + r.
        seed (int): Base seed.

    Returns:
        ConcentrationResult: The rate, the label-count bound (None off the
            simplex) and the general bound with the configured exponent.
    """
    if tau < 1 or reps < 1:
        raise ValueError(f"tau and reps must be positive, got tau={tau}, reps={reps}")
    flat = credal_flat(scenario, theta, x)
    norm = scenario.space.y_norm
    violations = 0
    with Timer("concentration_experiment", scenario=scenario.name, tau=tau, reps=reps):
        for r in range(reps):
            nature.reset(scenario, theta, seed + r)
            ybar = np.mean([nature.respond(x) for _ in range(tau)], axis=0)
            violations += dist_point_to_affine(norm, ybar, flat) >= delta

    dims = family_dims(scenario.family, scenario.space)
    simplex = concentration_bound_simplex(dims, tau, delta) if scenario.simplex_mode else None
    general = concentration_bound_general(dims, tau, delta)
    rate = violations / reps
    logger.debug(f"tau={tau} delta={delta}: rate {rate:.4g}, simplex bound {simplex}, general bound {general:.4g}")
    return ConcentrationResult(int(tau), float(delta), int(reps), float(rate), simplex, general)


def concentration_sweep(
    scenario: Scenario,
    theta: int,
    nature: NaturePolicy,
    x: int,
    taus: list[int],
    delta: float,
    reps: int,
    seed: int,
) -> list[ConcentrationResult]:
    """One experiment per tau, all from the same base seed."""
    return [concentration_experiment(scenario, theta, nature, x, t, delta, reps, seed) for t in taus]
