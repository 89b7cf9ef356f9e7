"""Game UCB for zero-sum matrix games with bandit feedback."""

from __future__ import annotations

import math

import numpy as np

from src.agents.base import AgentPolicy
from src.model import game_value


def outcome_label(n_actions: int, b: int, a: int, sign: int) -> int:
    """Index of the label (b, a, sign) in a zero-sum outcome simplex."""
    return (b * n_actions + a) * 2 + (1 if sign > 0 else 0)


class GameUCBAgent(AgentPolicy):
    """
    Plays a pure action sampled from the maximin strategy of the optimistic
    payoff matrix R / T + sqrt(2 ln(2 |B1| |B2| N^2) / max(T, 1)).

    Outcomes may be label vertices or mixtures of them; a mixture counts
    each opponent action with its weight.
    """

    name = "game_ucb"

    def _reset(self) -> None:
        game = self.scenario.meta["game"]
        self.n_actions = int(game["n_actions"])
        self.n_responses = int(game["n_responses"])
        self.pure_arms = [int(a) for a in game["pure_arms"]]
        shape = (self.n_actions, self.n_responses)
        self.totals = np.zeros(shape)
        self.counts = np.zeros(shape)
        self.strategy = np.full(self.n_actions, 1.0 / self.n_actions)
        self.value = 0.0
        self.action = 0

    def optimistic_payoff(self) -> np.ndarray:
        n = max(self.horizon, 1)
        log_term = math.log(2.0 * self.n_actions * self.n_responses * n * n)
        visits = np.maximum(self.counts, 1.0)
        mean = np.where(self.counts > 0, self.totals / visits, 0.0)
        return mean + np.sqrt(2.0 * log_term / visits)

    def _select(self) -> int:
        self.value, self.strategy = game_value(self.optimistic_payoff())
        self.action = int(self.rng.choice(self.n_actions, p=self.strategy))
        return self.pure_arms[self.action]

    def _observe(self, arm: int, y: np.ndarray) -> bool:
        a = self.action
        for b in range(self.n_responses):
            lose = y[outcome_label(self.n_actions, b, a, -1)]
            win = y[outcome_label(self.n_actions, b, a, +1)]
            if lose + win > 0.0:
                self.counts[a, b] += lose + win
                self.totals[a, b] += win - lose
        return False
