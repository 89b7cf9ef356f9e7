"""The gap: least outcome-space separation of an optimistic but wrong hypothesis."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from src.errors import UnsupportedBodyError
from src.geometry import Polytope, dist_between_convex
from src.logger.logging_config import get_logger
from src.logger.timing import Timer
from src.model import (
    HypothesisFamily,
    OutcomeSpace,
    RewardSpec,
    credal_section,
    prevision_table,
    table_optimal_arms,
)
from src.numkit.tolerances import get_tolerance

logger = get_logger(__name__)


@dataclass
class GapResult:
    value: float
    pairs: int
    supported: bool = True
    witness: tuple[int, int] | None = None


def qualifying_pairs(table: np.ndarray) -> list[tuple[int, int, int]]:
    """
    Ordered pairs (theta, theta') where theta' looks at least as good as
    theta yet its optimal arm is strictly worse under theta.

    Returns:
        list[tuple[int, int, int]]: (theta, theta', optimal arm of theta').
    """
    tol = get_tolerance("tol_obj")
    n_h = table.shape[1]
    arms, values = table_optimal_arms(table)
    pairs = []
    for h in range(n_h):
        value_h = values[h]
        for h2 in range(n_h):
            if h2 == h:
                continue
            arm2, value_h2 = int(arms[h2]), values[h2]
            if value_h2 >= value_h - tol and table[arm2, h] < value_h - tol:
                pairs.append((h, h2, arm2))
    return pairs


def gap_compute(
    fam: HypothesisFamily,
    reward: RewardSpec,
    space: OutcomeSpace,
    table: np.ndarray | None = None,
) -> GapResult:
    """
    min over qualifying pairs of d_Y(K_theta(x*)+, K_theta'(x*)+), x* the
    optimal arm of theta'; +inf when no pair qualifies.

    Distances between sections need a polytope body; other bodies yield a
    result with `supported=False` and a NaN value when some pair qualifies.
    """
    table = prevision_table(fam, reward, space) if table is None else table
    pairs = qualifying_pairs(table)
    if not pairs:
        return GapResult(float("inf"), 0)
    if not isinstance(space.body, Polytope):
        logger.warning(f"gap needs section distances on a polytope, body is {type(space.body).__name__}")
        return GapResult(float("nan"), len(pairs), supported=False)

    value, witness = float("inf"), None
    with Timer("gap_compute", pairs=len(pairs)):
        for h, h2, arm in pairs:
            try:
                d = dist_between_convex(
                    space.y_norm,
                    credal_section(fam, space, arm, h),
                    credal_section(fam, space, arm, h2),
                )
            except UnsupportedBodyError as exc:
                logger.warning(f"gap distance unavailable: {exc}")
                return GapResult(float("nan"), len(pairs), supported=False)
            if d < value:
                value, witness = d, (h, h2)
    logger.info(f"gap = {value:.6g} over {len(pairs)} qualifying pairs")
    return GapResult(value, len(pairs), witness=witness)
