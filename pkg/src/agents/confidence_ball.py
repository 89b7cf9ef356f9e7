"""
Confidence Ball for stochastic linear bandits: a determinant-maximising
arm basis initialises the design matrix, and each round plays the arm with
the largest optimistic value over an ellipsoidal confidence set.
"""

from __future__ import annotations

import math

import numpy as np

from src.agents.base import AgentPolicy
from src.errors import SingularMatrixError
from src.logger.logging_config import get_logger

logger = get_logger(__name__)

SPANNER_CONFIG = {
    # stop swapping once |det| improves by less than this
    "det_gain": 1e-9,
    "max_sweeps": 100,
}


def max_det_basis(arms: np.ndarray) -> np.ndarray:
    """
    Greedy |det| maximisation over square matrices whose columns are arms.

    A column-by-column greedy start is refined by single-column swaps
    until no swap gains more than SPANNER_CONFIG["det_gain"].

    Parameters:
        arms (np.ndarray): Arm feature vectors as rows, spanning R^D.

    Returns:
        np.ndarray: Indices of the D chosen arms.

    Raises:
        SingularMatrixError: If the arms do not span R^D.
    """
    feats = np.asarray(arms, dtype=float)
    d = feats.shape[1]
    basis = np.eye(d)
    chosen = [-1] * d
    for i in range(d):
        best = -1.0
        for k, arm in enumerate(feats):
            trial = basis.copy()
            trial[:, i] = arm
            value = abs(np.linalg.det(trial))
            if value > best:
                best, choice = value, k
        basis[:, i] = feats[choice]
        chosen[i] = choice
    current = abs(np.linalg.det(basis))
    if current <= 1e-12:
        raise SingularMatrixError("the arms do not span the feature space")

    for _ in range(SPANNER_CONFIG["max_sweeps"]):
        improved = False
        for i in range(d):
            for k, arm in enumerate(feats):
                trial = basis.copy()
                trial[:, i] = arm
                value = abs(np.linalg.det(trial))
                if value > current + SPANNER_CONFIG["det_gain"]:
                    basis, current, chosen[i], improved = trial, value, k, True
        if not improved:
            break
    return np.array(chosen)


def ellipsoid_max(x, center: np.ndarray, x_inv: np.ndarray, beta: float) -> float:
    """max of x . theta over {(theta - c)^T X (theta - c) <= beta}."""
    vec = np.asarray(x, dtype=float)
    return float(vec @ center + math.sqrt(beta * max(0.0, float(vec @ x_inv @ vec))))


def confidence_radius(dim: int, n: int, horizon: int) -> float:
    """beta = max(128 D ln n ln(N n^2), (8/3 ln(N n^2))^2) at round n >= 1."""
    log_nn = math.log(horizon * n * n)
    return max(128.0 * dim * math.log(n) * log_nn, (8.0 / 3.0 * log_nn) ** 2)


class ConfidenceBallAgent(AgentPolicy):
    """Arm features are the rows of the family's arm grid."""

    name = "confidence_ball"

    def _reset(self) -> None:
        self.features = np.asarray(self.scenario.family.arms, dtype=float)
        spanner = max_det_basis(self.features)
        b = self.features[spanner].T
        self.spanner = spanner
        self.design = b @ b.T
        self.response = np.zeros(self.features.shape[1])
        self.round = 0
        logger.debug(f"Confidence Ball spanner arms {spanner.tolist()}")

    def _select(self) -> int:
        self.round += 1
        try:
            np.linalg.cholesky(self.design)
        except np.linalg.LinAlgError as exc:
            raise SingularMatrixError("design matrix lost positive definiteness") from exc
        x_inv = np.linalg.inv(self.design)
        center = x_inv @ self.response
        beta = confidence_radius(self.features.shape[1], self.round, max(self.horizon, 1))
        values = [ellipsoid_max(x, center, x_inv, beta) for x in self.features]
        return int(np.argmax(values))

    def _observe(self, arm: int, y: np.ndarray) -> bool:
        x = self.features[arm]
        self.design += np.outer(x, x)
        self.response += self.scenario.reward.value(arm, y) * x
        return False
