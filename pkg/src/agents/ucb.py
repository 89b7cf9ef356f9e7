"""Classical UCB over a finite arm set, on the scalar reward of each outcome."""

from __future__ import annotations

import math

import numpy as np

from src.agents.base import AgentPolicy


class UCBAgent(AgentPolicy):
    """Pull every arm once, then the argmax of r_x / t_x + 2 sqrt(ln N / t_x)."""

    name = "ucb"

    def _reset(self) -> None:
        n = self.scenario.n_arms
        self.totals = np.zeros(n)
        self.counts = np.zeros(n, dtype=int)

    def indices(self) -> np.ndarray:
        bonus = 2.0 * np.sqrt(math.log(max(self.horizon, 1)) / self.counts)
        return self.totals / self.counts + bonus

    def _select(self) -> int:
        unexplored = np.flatnonzero(self.counts == 0)
        if unexplored.size:
            return int(unexplored[0])
        return int(np.argmax(self.indices()))

    def _observe(self, arm: int, y: np.ndarray) -> bool:
        self.totals[arm] += self.scenario.reward.value(arm, y)
        self.counts[arm] += 1
        return False
