"""
Monte-Carlo aggregation of episodes: repetition r uses seed + r, episodes
may run in worker processes, and results are reduced in repetition order.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field

import numpy as np

from src.agents import make_agent
from src.logger.logging_config import get_logger
from src.logger.timing import Timer
from src.nature import make_nature
from src.scenarios import Scenario
from src.sim.episode import Trace, run_episode
from src.sim.regret import RegretRecord, regret_trace

logger = get_logger(__name__)


@dataclass(frozen=True)
class EpisodeSpec:
    """Everything one repetition needs; picklable for worker processes."""

    scenario: Scenario
    agent: str
    nature: str
    theta: int
    horizon: int
    agent_params: dict = field(default_factory=dict)
    nature_params: dict = field(default_factory=dict)


@dataclass
class MonteCarloSummary:
    theta: int
    reps: int
    mean_regret: np.ndarray = field(repr=False)
    std_regret: np.ndarray = field(repr=False)
    traces: list[Trace] = field(default_factory=list, repr=False)
    regrets: list[RegretRecord] = field(default_factory=list, repr=False)

    @property
    def flags(self) -> list[dict]:
        return [t.flags for t in self.traces]

    @property
    def failures(self) -> int:
        return sum(t.failed for t in self.traces)

    @property
    def standard_error(self) -> np.ndarray:
        return self.std_regret / np.sqrt(self.reps)


def run_repetition(spec: EpisodeSpec, seed: int) -> tuple[Trace, RegretRecord]:
    agent = make_agent(spec.agent, spec.agent_params)
    nature = make_nature(spec.nature, spec.nature_params)
    trace = run_episode(agent, nature, spec.scenario, spec.theta, spec.horizon, seed, on_error="record")
    return trace, regret_trace(trace, spec.scenario, spec.theta)


def _padded(records: list[RegretRecord], horizon: int) -> np.ndarray:
    """Regret curves as rows; truncated episodes hold their last value."""
    rows = np.zeros((len(records), horizon))
    for k, rec in enumerate(records):
        c = rec.cumulative
        if c.size:
            rows[k, : c.size] = c
            rows[k, c.size :] = c[-1]
    return rows


def monte_carlo(spec: EpisodeSpec, reps: int, seed: int, threads: int = 1) -> MonteCarloSummary:
    """
    Run `reps` episodes with seeds seed + r and summarise the regret curves.

    Parameters:
        spec (EpisodeSpec): The episode to repeat.
        reps (int): Number of repetitions, at least 1.
        seed (int): Base seed.
        threads (int): Worker processes; 1 runs in this process.

    Returns:
        MonteCarloSummary: Per-round mean and sample standard deviation of
            cumulative regret (zero deviation for a single repetition).
    """
    if reps < 1:
        raise ValueError(f"reps must be at least 1, got {reps}")
    seeds = [seed + r for r in range(reps)]
    with Timer("monte_carlo", agent=spec.agent, nature=spec.nature, theta=spec.theta, reps=reps):
        if threads <= 1 or reps == 1:
            results = [run_repetition(spec, s) for s in seeds]
        else:
            with ProcessPoolExecutor(max_workers=threads) as executor:
                futures = {executor.submit(run_repetition, spec, s): s for s in seeds}
                by_seed = {futures[f]: f.result() for f in as_completed(futures)}
            results = [by_seed[s] for s in seeds]

    traces = [t for t, _ in results]
    regrets = [r for _, r in results]
    curves = _padded(regrets, spec.horizon)
    mean = curves.mean(axis=0) if spec.horizon else np.zeros(0)
    std = curves.std(axis=0, ddof=1) if reps > 1 else np.zeros(spec.horizon)
    summary = MonteCarloSummary(spec.theta, reps, mean, std, traces, regrets)
    if summary.failures:
        logger.warning(f"{summary.failures} of {reps} episodes stopped on a policy error")
    final = float(mean[-1]) if mean.size else 0.0
    logger.info(f"theta={spec.theta}: mean final regret {final:.6g} over {reps} repetitions")
    return summary
