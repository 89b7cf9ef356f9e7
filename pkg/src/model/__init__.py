"""
The semantic core: outcome spaces, hypothesis families and their credal
sections, affine rewards, lower and upper previsions, optimal arms and the
value of zero-sum games.
"""

from .family import (
    CellCheck,
    FamilyReport,
    HypothesisFamily,
    credal_section,
    f_matrix,
    validate_family,
)
from .game import game_value, response_value
from .previsions import (
    argmax_lowest,
    extreme_outcome,
    lower_prevision,
    optimal_arm,
    prevision_table,
    table_optimal_arms,
    upper_prevision,
)
from .reward import ConvexifiedReward, RewardSpec, convexify_reward
from .space import OutcomeSpace

__all__ = [
    # family.py
    "CellCheck",
    "FamilyReport",
    "HypothesisFamily",
    "credal_section",
    "f_matrix",
    "validate_family",
    # game.py
    "game_value",
    "response_value",
    # previsions.py
    "argmax_lowest",
    "extreme_outcome",
    "lower_prevision",
    "optimal_arm",
    "prevision_table",
    "table_optimal_arms",
    "upper_prevision",
    # reward.py
    "ConvexifiedReward",
    "RewardSpec",
    "convexify_reward",
    # space.py
    "OutcomeSpace",
]
