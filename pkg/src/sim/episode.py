"""One episode: alternate select_arm, respond and observe for N rounds."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from src.agents import AgentPolicy
from src.errors import BanditError
from src.logger.logging_config import get_logger
from src.nature import NaturePolicy
from src.numkit import spawn_seeds
from src.scenarios import Scenario

logger = get_logger(__name__)


@dataclass
class Trace:
    """
    The sampled sequence of one episode. `flags` carries the agent's flags
    (for instance an emptied confidence set) and any recorded error.
    """

    scenario: str
    theta: int
    seed: int
    arms: np.ndarray = field(repr=False)
    outcomes: np.ndarray = field(repr=False)
    rewards: np.ndarray = field(repr=False)
    flags: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return int(self.arms.shape[0])

    @property
    def failed(self) -> bool:
        return "error" in self.flags

    def rewards_consistent(self, scenario: Scenario) -> bool:
        """Whether every stored reward equals r(arm, outcome) recomputed."""
        recomputed = [scenario.reward.value(x, y) for x, y in zip(self.arms, self.outcomes)]
        return bool(np.array_equal(np.asarray(recomputed, dtype=float), self.rewards))


def run_episode(
    agent: AgentPolicy,
    nature: NaturePolicy,
    scenario: Scenario,
    theta: int,
    horizon: int,
    seed: int,
    on_error: str = "raise",
) -> Trace:
    """
    Run the agent against the nature policy for `horizon` rounds.

    Agent and nature draw from independent child streams of `seed`, so the
    trace is a deterministic function of its arguments.

    Parameters:
        agent (AgentPolicy): Agent, reset here.
        nature (NaturePolicy): Nature, reset here on theta.
        scenario (Scenario): The scenario.
        theta (int): True hypothesis index.
        horizon (int): Number of rounds N (0 gives an empty trace).
        seed (int): Episode seed.
        on_error (str): "raise" re-raises policy errors after flagging them;
            "record" stops the episode and returns the truncated trace.

    Returns:
        Trace: Arms, outcomes and rewards per round.
    """
    if on_error not in ("raise", "record"):
        raise ValueError(f"on_error must be 'raise' or 'record', got {on_error!r}")
    agent_seed, nature_seed = spawn_seeds(seed, 2)
    agent.reset(scenario, horizon, agent_seed)
    nature.reset(scenario, theta, nature_seed)

    arms = np.zeros(horizon, dtype=int)
    outcomes = np.zeros((horizon, scenario.space.dim))
    rewards = np.zeros(horizon)
    flags: dict = {}
    done = horizon
    try:
        for n in range(horizon):
            x = agent.select_arm()
            y = nature.respond(x)
            agent.observe(y)
            arms[n], outcomes[n], rewards[n] = x, y, scenario.reward.value(x, y)
    except BanditError as exc:
        done = n
        flags["error"] = {"type": type(exc).__name__, "message": str(exc), "round": n}
        logger.error(f"episode {scenario.name} theta={theta} seed={seed} stopped at round {n}: {exc}")
        if on_error == "raise":
            raise
    flags.update(agent.flags)
    return Trace(scenario.name, int(theta), int(seed), arms[:done], outcomes[:done], rewards[:done], flags)
