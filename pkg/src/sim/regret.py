"""Cumulative regret of a trace against the optimal lower prevision."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from src.scenarios import Scenario
from src.sim.episode import Trace


@dataclass
class RegretRecord:
    """cumulative[n] = (n + 1) ME* - sum of the first n + 1 rewards."""

    baseline: float
    optimal_arm: int
    cumulative: np.ndarray = field(repr=False)

    @property
    def final(self) -> float:
        return float(self.cumulative[-1]) if self.cumulative.size else 0.0


def regret_trace(trace: Trace, scenario: Scenario, theta: int | None = None) -> RegretRecord:
    theta = trace.theta if theta is None else int(theta)
    arm, baseline = scenario.optimal(theta)
    rounds = np.arange(1, len(trace) + 1, dtype=float)
    return RegretRecord(baseline, arm, rounds * baseline - np.cumsum(trace.rewards))
