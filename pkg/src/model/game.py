"""Value and maximin strategy of a finite two-player zero-sum game."""

from __future__ import annotations

import numpy as np

from src.errors import NumericalBreakdownError
from src.numkit import LPBuilder, as_finite_matrix


def game_value(payoff) -> tuple[float, np.ndarray]:
    """
    max_x min_b x^T P e_b over mixed strategies x of the row player.

    Parameters:
        payoff (array_like): Payoff matrix P, rows are the maximiser's actions.

    Returns:
        tuple[float, np.ndarray]: (game value, maximin strategy).
    """
    p = as_finite_matrix(payoff, "payoff")
    rows, cols = p.shape
    lp = LPBuilder()
    lp.add_variables("x", rows)
    lp.add_variables("v", 1, lower=-np.inf)
    lp.add_eq({"x": np.ones((1, rows))}, [1.0])
    lp.add_ub({"x": -p.T, "v": np.ones((cols, 1))}, np.zeros(cols))
    lp.set_objective({"v": [1.0]}, maximize=True)
    solution, parts = lp.solve()
    if not solution.optimal:
        raise NumericalBreakdownError(f"game LP ended {solution.status.value}")
    strategy = np.clip(parts["x"], 0.0, None)
    return float(solution.value), strategy / strategy.sum()


def response_value(payoff, x) -> float:
    """min over pure column responses of x^T P e_b."""
    p = as_finite_matrix(payoff, "payoff")
    return float(np.min(np.asarray(x, dtype=float) @ p))
