"""
Nature policies compatible with a hypothesis: the greedy adversary, the
fixed-mean nature, the two lower-bound adversaries and a Monte-Carlo
compatibility audit.
"""

from .adversaries import (
    FixedMeanNature,
    GreedyAdversary,
    check_mean_map,
    point_mean_map,
    zerosum_mean_map,
)
from .audit import AUDIT_CONFIG, ArmAudit, AuditReport, compatibility_audit
from .base import NaturePolicy
from .factory import NATURE_KINDS, make_nature
from .lower_bounds import LowerRAdversary, LowerRParams, LowerSAdversary, LowerSParams

__all__ = [
    # adversaries.py
    "FixedMeanNature",
    "GreedyAdversary",
    "check_mean_map",
    "point_mean_map",
    "zerosum_mean_map",
    # audit.py
    "AUDIT_CONFIG",
    "ArmAudit",
    "AuditReport",
    "compatibility_audit",
    # base.py
    "NaturePolicy",
    # factory.py
    "NATURE_KINDS",
    "make_nature",
    # lower_bounds.py
    "LowerRAdversary",
    "LowerRParams",
    "LowerSAdversary",
    "LowerSParams",
]
