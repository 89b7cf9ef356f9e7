"""
Agent policies: Imprecise UCB and the classical baselines (UCB, Confidence
Ball, Game UCB) behind one round-based contract.
"""

from .base import AgentPolicy
from .confidence_ball import (
    SPANNER_CONFIG,
    ConfidenceBallAgent,
    confidence_radius,
    ellipsoid_max,
    max_det_basis,
)
from .factory import AGENT_KINDS, make_agent
from .fixed import FixedArmAgent, OptimalArmAgent
from .game_ucb import GameUCBAgent, outcome_label
from .iucb import IUCBAgent, dz_distance, optimistic_hypothesis
from .ucb import UCBAgent

__all__ = [
    # base.py
    "AgentPolicy",
    # confidence_ball.py
    "SPANNER_CONFIG",
    "ConfidenceBallAgent",
    "confidence_radius",
    "ellipsoid_max",
    "max_det_basis",
    # factory.py
    "AGENT_KINDS",
    "make_agent",
    # fixed.py
    "FixedArmAgent",
    "OptimalArmAgent",
    # game_ucb.py
    "GameUCBAgent",
    "outcome_label",
    # iucb.py
    "IUCBAgent",
    "dz_distance",
    "optimistic_hypothesis",
    # ucb.py
    "UCBAgent",
]
