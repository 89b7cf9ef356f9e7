"""
Lower and upper previsions of the reward over credal sections, optimal
arms and the arm-by-hypothesis prevision table.
"""

from __future__ import annotations

import numpy as np

from src.errors import EmptyIntersectionError, InfeasibleCredalSetError
from src.logger.logging_config import get_logger
from src.logger.timing import Timer
from src.model.family import HypothesisFamily, credal_section
from src.model.reward import RewardSpec
from src.model.space import OutcomeSpace
from src.numkit.tolerances import get_tolerance

logger = get_logger(__name__)


def extreme_outcome(
    fam: HypothesisFamily,
    reward: RewardSpec,
    space: OutcomeSpace,
    x: int,
    theta,
    maximize: bool = False,
) -> tuple[float, np.ndarray]:
    """
    Optimise r(x, .) over K_theta(x)+.

    Returns:
        tuple[float, np.ndarray]: (reward value, optimal outcome).

    Raises:
        InfeasibleCredalSetError: If the credal section is empty.
    """
    section = credal_section(fam, space, x, theta)
    try:
        value, y = section.optimize(reward.coef[int(x)], maximize=maximize)
    except EmptyIntersectionError as exc:
        raise InfeasibleCredalSetError(
            f"credal section for arm {x} and hypothesis {theta} is empty"
        ) from exc
    return float(value + reward.offset[int(x)]), y


def lower_prevision(fam, reward, space, x: int, theta) -> float:
    """Minimal expected reward of arm x under hypothesis theta."""
    return extreme_outcome(fam, reward, space, x, theta, maximize=False)[0]


def upper_prevision(fam, reward, space, x: int, theta) -> float:
    """Maximal expected reward of arm x under hypothesis theta."""
    return extreme_outcome(fam, reward, space, x, theta, maximize=True)[0]


def argmax_lowest(values) -> int:
    """Index of the maximum, ties within tol_obj resolved to the lowest index."""
    arr = np.asarray(values, dtype=float)
    best = float(np.max(arr))
    return int(np.flatnonzero(arr >= best - get_tolerance("tol_obj"))[0])


def optimal_arm(
    fam: HypothesisFamily,
    reward: RewardSpec,
    space: OutcomeSpace,
    theta,
    table: np.ndarray | None = None,
) -> tuple[int, float]:
    """
    The arm maximising the lower prevision under theta.

    Parameters:
        fam (HypothesisFamily): The family.
        reward (RewardSpec): The reward.
        space (OutcomeSpace): The outcome space.
        theta (int | array_like): Hypothesis index or vector.
        table (np.ndarray | None): A precomputed prevision table, used when
            theta is a grid index.

    Returns:
        tuple[int, float]: (arm index, lower prevision of that arm).
    """
    if table is not None and isinstance(theta, (int, np.integer)):
        values = table[:, int(theta)]
    else:
        values = np.array([lower_prevision(fam, reward, space, x, theta) for x in range(fam.n_arms)])
    x = argmax_lowest(values)
    return x, float(values[x])


def prevision_table(fam: HypothesisFamily, reward: RewardSpec, space: OutcomeSpace) -> np.ndarray:
    """Lower previsions on the whole grid, shape (n_arms, n_hypotheses)."""
    table = np.empty((fam.n_arms, fam.n_hypotheses))
    with Timer("prevision_table", arms=fam.n_arms, hypotheses=fam.n_hypotheses):
        for x in range(fam.n_arms):
            for h in range(fam.n_hypotheses):
                table[x, h] = lower_prevision(fam, reward, space, x, h)
    return table


def table_optimal_arms(table: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Optimal arm and its value for every hypothesis column of a prevision table."""
    arms = np.array([argmax_lowest(table[:, h]) for h in range(table.shape[1])], dtype=int)
    return arms, table[arms, np.arange(table.shape[1])]
