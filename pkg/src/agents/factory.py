"""Agent construction from experiment-config entries."""

from __future__ import annotations

from src.agents.base import AgentPolicy
from src.agents.confidence_ball import ConfidenceBallAgent
from src.agents.fixed import FixedArmAgent, OptimalArmAgent
from src.agents.game_ucb import GameUCBAgent
from src.agents.iucb import IUCBAgent
from src.agents.ucb import UCBAgent
from src.errors import ConfigError

AGENT_KINDS: dict[str, type[AgentPolicy]] = {
    "iucb": IUCBAgent,
    "ucb": UCBAgent,
    "confidence_ball": ConfidenceBallAgent,
    "game_ucb": GameUCBAgent,
    "fixed": FixedArmAgent,
    "optimal": OptimalArmAgent,
}


def make_agent(kind: str, params: dict | None = None) -> AgentPolicy:
    """
    Raises:
        ConfigError: On an unknown kind or parameters the agent does not take.
    """
    if kind not in AGENT_KINDS:
        raise ConfigError(f"unknown agent kind {kind!r}; expected one of {sorted(AGENT_KINDS)}")
    try:
        return AGENT_KINDS[kind](**(params or {}))
    except TypeError as exc:
        raise ConfigError(f"bad parameters for agent {kind!r}: {exc}") from exc
