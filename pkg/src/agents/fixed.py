"""Agents that ignore feedback."""

from __future__ import annotations

import numpy as np

from src.agents.base import AgentPolicy


class FixedArmAgent(AgentPolicy):
    name = "fixed"

    def __init__(self, arm: int):
        super().__init__()
        self.arm = int(arm)

    def _select(self) -> int:
        return self.arm

    def _observe(self, arm: int, y: np.ndarray) -> bool:
        return False


class OptimalArmAgent(FixedArmAgent):
    """Always plays the optimal arm of a given hypothesis."""

    name = "optimal"

    def __init__(self, theta: int):
        super().__init__(0)
        self.theta = int(theta)

    def _reset(self) -> None:
        self.arm, _ = self.scenario.optimal(self.theta)
