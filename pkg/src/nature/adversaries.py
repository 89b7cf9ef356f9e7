"""
Generic nature policies: the per-round greedy adversary and the
fixed-mean nature, plus helpers producing compatible mean maps.
"""

from __future__ import annotations

from collections.abc import Callable

import numpy as np

from src.errors import EmptyIntersectionError, IncompatibleMeanError, InfeasibleCredalSetError
from src.geometry import Polytope
from src.logger.logging_config import get_logger
from src.model import credal_section, extreme_outcome, f_matrix
from src.nature.base import NaturePolicy
from src.numkit.tolerances import get_tolerance
from src.scenarios.conditional import payoff_of
from src.scenarios.scenario import Scenario

logger = get_logger(__name__)


class GreedyAdversary(NaturePolicy):
    """
    Answers arm x with an outcome minimising r(x, .) over K_theta*(x)+.

    With `sample_vertices` (the default on simplex bodies) it instead
    samples a body vertex from the weights of that minimiser, so the mean
    is the minimiser.
    """

    name = "greedy"

    def __init__(self, sample_vertices: bool | None = None):
        super().__init__()
        self.sample_vertices = sample_vertices

    def _reset(self) -> None:
        sc = self.scenario
        sampling = sc.simplex_mode if self.sample_vertices is None else self.sample_vertices
        self.sampling = bool(sampling) and isinstance(sc.space.body, Polytope)
        self._cache: dict[int, np.ndarray] = {}

    def worst_mean(self, x: int) -> np.ndarray:
        sc = self.scenario
        _, y = extreme_outcome(sc.family, sc.reward, sc.space, x, self.theta, maximize=False)
        return y

    def _weights(self, x: int) -> np.ndarray:
        sc = self.scenario
        section = credal_section(sc.family, sc.space, x, self.theta)
        try:
            return sc.space.body.section_weights(section.a_eq, section.b_eq, sc.reward.coef[x], False)
        except EmptyIntersectionError as exc:
            raise InfeasibleCredalSetError(f"empty credal section at arm {x}") from exc

    def _respond(self, x: int) -> np.ndarray:
        if x not in self._cache:
            self._cache[x] = self._weights(x) if self.sampling else self.worst_mean(x)
        if self.sampling:
            return self._sample_vertex(self._cache[x])
        return self._cache[x].copy()


def _mean_weights(body: Polytope, mean: np.ndarray) -> np.ndarray:
    return body.section_weights(np.eye(body.dim), mean, np.zeros(body.dim), False)


class FixedMeanNature(NaturePolicy):
    """
    Answers arm x with mean_map(x), or with a vertex sampled around it.

    Parameters:
        mean_map (Callable | array_like | None): x -> mean outcome, or an
            array with one row per arm. Defaults to `point_mean_map`.
        sample_vertices (bool | None): Sample vertices with the given mean;
            defaults to True on simplex bodies.
    """

    name = "fixed_mean"

    def __init__(self, mean_map: Callable[[int], np.ndarray] | np.ndarray | None = None,
                 sample_vertices: bool | None = None):
        super().__init__()
        self.mean_map = mean_map
        self.sample_vertices = sample_vertices

    def _reset(self) -> None:
        sc = self.scenario
        source = self.mean_map
        if source is None:
            source = point_mean_map(sc, self.theta)
        if callable(source):
            means = np.array([source(x) for x in range(sc.n_arms)], dtype=float)
        else:
            means = np.asarray(source, dtype=float).reshape(sc.n_arms, sc.space.dim)
        check_mean_map(sc, self.theta, means)
        self.means = means
        sampling = sc.simplex_mode if self.sample_vertices is None else self.sample_vertices
        self.sampling = bool(sampling) and isinstance(sc.space.body, Polytope)
        self._weights = (
            [_mean_weights(sc.space.body, m) for m in means] if self.sampling else None
        )

    def _respond(self, x: int) -> np.ndarray:
        if self.sampling:
            return self._sample_vertex(self._weights[x])
        return self.means[x].copy()


def check_mean_map(scenario: Scenario, theta: int, means: np.ndarray) -> None:
    """
    Raises:
        IncompatibleMeanError: If some mean is outside K_theta(x)+.
    """
    tol = 10 * get_tolerance("tol_feas")
    body = scenario.space.body
    for x, m in enumerate(means):
        residual = float(np.max(np.abs(f_matrix(scenario.family, x, theta) @ m), initial=0.0))
        if residual > tol or not body.contains(m, tol=tol):
            raise IncompatibleMeanError(
                f"mean {m.tolist()} for arm {x} is outside the credal section (residual {residual:.3g})"
            )


def point_mean_map(scenario: Scenario, theta: int) -> np.ndarray:
    """One point of each credal section; the only one when sections are points."""
    return np.array([
        credal_section(scenario.family, scenario.space, x, theta).point()
        for x in range(scenario.n_arms)
    ])


def zerosum_mean_map(scenario: Scenario, theta: int, opponent_strategy) -> np.ndarray:
    """
    Mean outcomes of a zero-sum scenario when the opponent plays a fixed
    mixed strategy and payoffs are +-1 with mean P[a, b].

    The outcome label (b, a, s) has probability q_b x_a (1 + s P[a, b]) / 2.
    """
    game = scenario.meta["game"]
    n1, n2 = int(game["n_actions"]), int(game["n_responses"])
    q = np.asarray(opponent_strategy, dtype=float).reshape(n2)
    payoff = payoff_of(scenario, theta)
    means = np.zeros((scenario.n_arms, scenario.space.dim))
    for x, strategy in enumerate(scenario.family.arms):
        for b in range(n2):
            for a in range(n1):
                base = (b * n1 + a) * 2
                weight = q[b] * strategy[a]
                means[x, base] = weight * (1.0 - payoff[a, b]) / 2.0
                means[x, base + 1] = weight * (1.0 + payoff[a, b]) / 2.0
    return means
