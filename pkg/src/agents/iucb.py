"""
Imprecise UCB.

The agent commits to the optimal arm of an optimistic hypothesis for a
cycle, accumulating the mean outcome y-bar. A cycle ends once the
confidence set is wide enough, transverse to V(x, y-bar), to be cut down
by the factor 2 (D_Z + 1); the survivors are those within eta / sqrt(tau)
of V(x, y-bar) in the Z-bar norm.
"""

from __future__ import annotations

import math

import numpy as np

from src.agents.base import AgentPolicy
from src.certificates import (
    Certificates,
    ZBarSpace,
    family_dims,
    param_C,
    param_R,
    recommended_eta_main,
    recommended_eta_simplex,
)
from src.errors import (
    EmptyConfidenceSetError,
    HypothesisEliminatedError,
    OutcomeOutsideBodyError,
)
from src.logger.logging_config import get_logger
from src.model import argmax_lowest
from src.numkit import chebyshev_residual, subgradient_minimize
from src.numkit.tolerances import get_tolerance

logger = get_logger(__name__)


def dz_distance(zb: ZBarSpace, theta, x: int, ybar) -> float:
    """
    min over v in V(x, ybar) of ||theta - v|| in Z-bar.

    Polyhedral Z-bar norms reduce to a Chebyshev residual LP; otherwise the
    norm is minimised over the kernel coordinates by subgradient descent.

    Parameters:
        zb (ZBarSpace): The Z-bar handles.
        theta (int | array_like): Hypothesis index or vector in Z.
        x (int): Arm.
        ybar (array_like): Mean outcome.

    Returns:
        float: The distance.
    """
    v = zb.embed_theta(theta)
    basis = zb.kernel_basis(x, ybar)
    if basis.shape[1] == 0:
        return zb.norm(v)
    if zb.polyhedral:
        return chebyshev_residual(zb.dual_rows @ v, zb.dual_rows @ basis)

    def oracle(coef):
        value, grad = zb.norm_with_subgradient(v - basis @ coef)
        return value, -basis.T @ grad

    start, *_ = np.linalg.lstsq(basis, v, rcond=None)
    _, value = subgradient_minimize(oracle, start)
    return max(0.0, value)


def optimistic_hypothesis(candidates, table: np.ndarray) -> tuple[int, int, float]:
    """
    The hypothesis of `candidates` whose optimal arm has the largest lower
    prevision, ties going to the lowest hypothesis index.

    Parameters:
        candidates (Iterable[int]): Hypothesis indices.
        table (np.ndarray): Prevision table (arms x hypotheses).

    Returns:
        tuple[int, int, float]: (hypothesis, its optimal arm, value).

    Raises:
        EmptyConfidenceSetError: If there is no candidate.
    """
    pool = sorted(int(h) for h in candidates)
    if not pool:
        raise EmptyConfidenceSetError("the confidence set is empty")
    arms = [argmax_lowest(table[:, h]) for h in pool]
    values = np.array([table[a, h] for a, h in zip(arms, pool)])
    k = argmax_lowest(values)
    return pool[k], arms[k], float(values[k])


class IUCBAgent(AgentPolicy):
    """
    Parameters:
        eta (float | None): Confidence parameter. By default the recommended
            value for the horizon: the simplex one for simplex bodies, else
            `eta_scale` times the general one.
        eta_scale (float): Constant of the general recommendation.
        strict (bool): Raise HypothesisEliminatedError when the confidence
            set empties instead of holding the last optimistic hypothesis.
    """

    name = "iucb"

    def __init__(self, eta: float | None = None, eta_scale: float = 1.0, strict: bool = False):
        super().__init__()
        self.eta_param = eta
        self.eta_scale = eta_scale
        self.strict = strict
        self.confidence: list[int] = []
        self.history: list[list[int]] = []
        self.cycle_log: list[tuple[int, float, float]] = []

    def _default_eta(self) -> float:
        sc = self.scenario
        dims = family_dims(sc.family, sc.space)
        cert = Certificates(
            R=param_R(sc.family, sc.space, sc.zbar),
            S=1.0,
            C=param_C(sc.reward, sc.space, sc.family),
        )
        n = max(self.horizon, 2)
        if dims.labels:
            return recommended_eta_simplex(cert, dims, n)
        return recommended_eta_main(cert, dims, n, scale=self.eta_scale)

    def _reset(self) -> None:
        sc = self.scenario
        self.zb = sc.zbar
        self.table = sc.table
        self.eta = float(self.eta_param) if self.eta_param is not None else self._default_eta()
        self.confidence = list(range(sc.n_hypotheses))
        self.history = [list(self.confidence)]
        self.cycle_log = []
        self.cycle = 0
        self.last_rho = 0.0
        self.eliminated = False
        self.threshold = 2.0 * (sc.family.dim_z + 1) * self.eta
        self._new_cycle()
        logger.debug(f"IUCB reset: eta={self.eta:.6g}, |C|={len(self.confidence)}")

    def _new_cycle(self) -> None:
        self.theta_star, self.arm_star, _ = optimistic_hypothesis(self.confidence, self.table)
        self.tau = 0
        self.sum_y = np.zeros(self.scenario.space.dim)

    def _select(self) -> int:
        if self.eliminated and self.strict:
            raise HypothesisEliminatedError("every hypothesis was eliminated")
        return self.arm_star

    def mean_outcome(self) -> np.ndarray:
        """y-bar, put back on mu^-1(1)."""
        mu = self.scenario.space.mu
        ybar = self.sum_y / max(self.tau, 1)
        return ybar + (1.0 - float(mu @ ybar)) * mu / float(mu @ mu)

    def distances(self, ybar) -> dict[int, float]:
        return {h: dz_distance(self.zb, h, self.arm_star, ybar) for h in self.confidence}

    def _observe(self, arm: int, y: np.ndarray) -> bool:
        space = self.scenario.space
        if not space.body.contains(y, tol=get_tolerance("tol_feas")):
            raise OutcomeOutsideBodyError(f"outcome {y.tolist()} is outside the body")
        self.tau += 1
        self.sum_y += y
        if self.eliminated:
            return False
        ybar = self.mean_outcome()
        dist = self.distances(ybar)
        rho = max(dist.values())
        self.last_rho = rho
        if math.sqrt(self.tau) * rho < self.threshold:
            return False

        cut = self.eta / math.sqrt(self.tau)
        survivors = [h for h in self.confidence if dist[h] <= cut]
        logger.debug(
            f"IUCB cycle {self.cycle} ends after {self.tau} rounds: "
            f"rho={rho:.4g}, kept {len(survivors)}/{len(self.confidence)}"
        )
        self.cycle += 1
        # (rounds, width before the cut, largest kept distance)
        self.cycle_log.append((self.tau, rho, max((dist[h] for h in survivors), default=0.0)))
        if not survivors:
            self.eliminated = True
            self.flags["confidence_set_emptied"] = self.cycle
            logger.warning(f"IUCB confidence set emptied in cycle {self.cycle}; holding arm {self.arm_star}")
            self.confidence = []
            self.history.append([])
            return True
        self.confidence = survivors
        self.history.append(list(survivors))
        self._new_cycle()
        return True
