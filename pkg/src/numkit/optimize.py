"""
Best-iterate subgradient descent for the few convex, non-polyhedral
minimizations (ball and cone norms over affine subspaces).
"""

from __future__ import annotations

from collections.abc import Callable

import numpy as np

SUBGRADIENT_CONFIG: dict[str, float] = {
    "iterations": 10_000,
    # first step as a fraction of the initial objective value
    "step_scale": 1.0,
}


def subgradient_minimize(
    oracle: Callable[[np.ndarray], tuple[float, np.ndarray]],
    x0: np.ndarray,
    scale: float | None = None,
    iterations: int | None = None,
) -> tuple[np.ndarray, float]:
    """
    Minimize a convex function given a (value, subgradient) oracle.

    Normalised steps of length scale/k; the best iterate seen is returned.

    Parameters:
        oracle (Callable): x -> (f(x), g) with g a subgradient at x.
        x0 (np.ndarray): Starting point.
        scale (float | None): Length of the first step; defaults to f(x0).
        iterations (int | None): Defaults to SUBGRADIENT_CONFIG["iterations"].

    Returns:
        tuple[np.ndarray, float]: Best point and its value.
    """
    x = np.asarray(x0, dtype=float).copy()
    best_x = x.copy()
    best_f, g = oracle(x)
    if x.size == 0:
        return best_x, float(best_f)
    if scale is None:
        scale = SUBGRADIENT_CONFIG["step_scale"] * max(abs(best_f), 1e-12)
    n_iter = int(iterations or SUBGRADIENT_CONFIG["iterations"])
    for k in range(1, n_iter + 1):
        norm = float(np.linalg.norm(g))
        if norm == 0.0:
            break
        x = x - (scale / k) * g / norm
        f, g = oracle(x)
        if f < best_f:
            best_f, best_x = f, x.copy()
    return best_x, float(best_f)
