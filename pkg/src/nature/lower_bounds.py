"""
The adversaries behind the two lower-bound constructions.

Both keep outcomes in a two-point Bernoulli mode that reveals little about
the true hypothesis, and fall back to a deterministic compatible outcome
once the agent plays an arm that would make the Bernoulli mode informative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from src.logger.logging_config import get_logger
from src.nature.base import NaturePolicy

logger = get_logger(__name__)


@dataclass(frozen=True)
class LowerSParams:
    """alpha in (0, 1/4], delta in (0, 1/2)."""

    alpha: float
    delta: float

    def __post_init__(self):
        if not 0.0 < self.alpha <= 0.25:
            raise ValueError(f"alpha must lie in (0, 1/4], got {self.alpha}")
        if not 0.0 < self.delta < 0.5:
            raise ValueError(f"delta must lie in (0, 1/2), got {self.delta}")


@dataclass(frozen=True)
class LowerRParams:
    """
    lam > 0, alpha in (3 pi / 8, pi / 2), psi in (pi / 4, alpha) with
    alpha + psi > 3 pi / 4, and delta in (0, 1) above
    1 / ((lam + 1) tan(alpha + psi - pi / 2)).
    """

    lam: float
    alpha: float
    psi: float
    delta: float

    def __post_init__(self):
        if self.lam <= 0.0:
            raise ValueError(f"lam must be positive, got {self.lam}")
        if not 3 * math.pi / 8 < self.alpha < math.pi / 2:
            raise ValueError(f"alpha must lie in (3pi/8, pi/2), got {self.alpha}")
        if not math.pi / 4 < self.psi < self.alpha or self.alpha + self.psi <= 3 * math.pi / 4:
            raise ValueError(f"psi={self.psi} is incompatible with alpha={self.alpha}")
        floor = self.min_delta(self.lam, self.alpha, self.psi)
        if not floor < self.delta < 1.0:
            raise ValueError(f"delta must lie in ({floor:.6g}, 1), got {self.delta}")

    @staticmethod
    def min_delta(lam: float, alpha: float, psi: float) -> float:
        return 1.0 / ((lam + 1.0) * math.tan(alpha + psi - math.pi / 2))


class LowerSAdversary(NaturePolicy):
    """
    For the cone scenario with theta* = (1 - a, -a, 2 a u*).

    While every played arm has u*.x >= -1 / (1 + 2 delta) and y_perp = e0 has
    not occurred, the outcome is y_delta(x) = (0, 1, -(1/2 + delta) x) with
    probability (1 - a) / (1 + a (1 + 2 delta) u*.x), else y_perp. Afterwards
    it is y_0(x) = (a (1 + u*.x), 1 - a (1 + u*.x), -x / 2).
    """

    name = "lower_s"

    def __init__(self, delta: float = 0.25):
        super().__init__()
        self.delta = delta

    def _reset(self) -> None:
        alpha = float(self.scenario.meta["alpha"])
        self.params = LowerSParams(alpha, self.delta)
        theta = self.scenario.family.theta(self.theta)
        self.u_star = theta[2:] / (2.0 * alpha)
        self.bernoulli = True

    def p_delta(self, x: int) -> float:
        a, d = self.params.alpha, self.params.delta
        arm = self.scenario.family.arms[x]
        return (1.0 - a) / (1.0 + a * (1.0 + 2.0 * d) * float(self.u_star @ arm))

    def y_delta(self, x: int) -> np.ndarray:
        arm = self.scenario.family.arms[x]
        return np.concatenate([[0.0, 1.0], -(0.5 + self.params.delta) * arm])

    def y_perp(self) -> np.ndarray:
        y = np.zeros(self.scenario.space.dim)
        y[0] = 1.0
        return y

    def y_zero(self, x: int) -> np.ndarray:
        a = self.params.alpha
        arm = self.scenario.family.arms[x]
        s = a * (1.0 + float(self.u_star @ arm))
        return np.concatenate([[s, 1.0 - s], -0.5 * arm])

    def _respond(self, x: int) -> np.ndarray:
        arm = self.scenario.family.arms[x]
        if self.bernoulli and float(self.u_star @ arm) < -1.0 / (1.0 + 2.0 * self.params.delta):
            self.bernoulli = False
            logger.debug(f"lower-s adversary leaves Bernoulli mode at arm {x}")
        if not self.bernoulli:
            return self.y_zero(x)
        if self.rng.random() < self.p_delta(x):
            return self.y_delta(x)
        self.bernoulli = False
        return self.y_perp()


class LowerRAdversary(NaturePolicy):
    """
    For the disk scenario with F(x, z, y) = z^T (I + lam x x^T)(y0, y1).

    While every played arm has |x.theta*| > delta, outcomes are
    y+- = (cos psi, +-sin psi, 1) with P[y+] chosen so that the mean lies
    on the credal line; afterwards the outcome is the disk boundary point of
    that line with non-negative first coordinate.
    """

    name = "lower_r"

    def __init__(self, psi: float | None = None, delta: float | None = None):
        super().__init__()
        self.psi = psi
        self.delta = delta

    def _reset(self) -> None:
        meta = self.scenario.meta
        lam, alpha = float(meta["lam"]), float(meta["alpha"])
        psi = self.psi if self.psi is not None else 0.5 * (max(math.pi / 4, 3 * math.pi / 4 - alpha) + alpha)
        floor = LowerRParams.min_delta(lam, alpha, psi)
        delta = self.delta if self.delta is not None else min(2.0 * floor, 0.5 * (floor + 1.0))
        self.params = LowerRParams(lam, alpha, psi, delta)
        self.theta_star = self.scenario.family.theta(self.theta)
        self.bernoulli = True

    def tilted(self, x: int) -> np.ndarray:
        """(I + lam x x^T) theta*."""
        arm = self.scenario.family.arms[x]
        return self.theta_star + self.params.lam * float(arm @ self.theta_star) * arm

    def p_plus(self, x: int) -> float:
        t = self.tilted(x)
        psi = self.params.psi
        return 0.5 * (1.0 - t[0] / (t[1] * math.tan(psi)))

    def y_pm(self, sign: float) -> np.ndarray:
        psi = self.params.psi
        return np.array([math.cos(psi), sign * math.sin(psi), 1.0])

    def y_boundary(self, x: int) -> np.ndarray:
        t = self.tilted(x)
        u = np.array([-t[1], t[0]]) / float(np.linalg.norm(t))
        if u[0] < 0.0:
            u = -u
        return np.array([u[0], u[1], 1.0])

    def _respond(self, x: int) -> np.ndarray:
        arm = self.scenario.family.arms[x]
        if self.bernoulli and abs(float(arm @ self.theta_star)) <= self.params.delta:
            self.bernoulli = False
            logger.debug(f"lower-r adversary leaves Bernoulli mode at arm {x}")
        if not self.bernoulli:
            return self.y_boundary(x)
        p = self.p_plus(x)
        if not 0.0 <= p <= 1.0:
            logger.warning(f"lower-r probability {p:.6g} outside [0, 1] at arm {x}; clipped")
            p = min(1.0, max(0.0, p))
        return self.y_pm(1.0 if self.rng.random() < p else -1.0)
