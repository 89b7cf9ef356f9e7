"""
Families over non-simplex bodies: hyperplane sections of the unit ball,
the traffic-light cube and the two lower-bound constructions on the cone
and the disk.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from src.geometry import Ball, ConeBall, Polytope, sphere_points
from src.logger.logging_config import get_logger
from src.model import HypothesisFamily, OutcomeSpace, RewardSpec
from src.numkit import make_rng
from src.scenarios.scenario import Scenario

logger = get_logger(__name__)

HYPERPLANE_CONFIG = {
    # scale of the affine column of random arms
    "offset_scale": 0.2,
    "max_draws": 200,
}


def _meets_ball(matrix: np.ndarray, theta: np.ndarray, radius: float = 1.0) -> bool:
    """Whether theta^T X (u, 1) = 0 has a solution with ||u|| <= radius."""
    a = matrix.T @ theta
    return abs(a[-1]) <= radius * float(np.linalg.norm(a[:-1])) + 1e-12


def _random_arm(rng: np.random.Generator, n: int, m: int, hyps: np.ndarray) -> np.ndarray:
    for _ in range(HYPERPLANE_CONFIG["max_draws"]):
        x = rng.standard_normal((n, m + 1))
        x[:, -1] *= HYPERPLANE_CONFIG["offset_scale"]
        if np.linalg.matrix_rank(x) == min(n, m + 1) and all(_meets_ball(x, h) for h in hyps):
            return x
    raise ValueError("could not draw an arm meeting every hypothesis; enlarge offset freedom")


def hyperplane_scenario(
    n: int = 3,
    m: int = 2,
    n_arms: int = 6,
    n_hyps: int = 6,
    seed: int = 0,
    arms=None,
    hypotheses=None,
) -> Scenario:
    """
    Mean outcome u in the unit ball of R^m constrained to the hyperplane
    theta^T X (u, 1) = 0, for full-rank n x (m + 1) arm matrices X.

    Random arms and hypotheses are drawn when not given; every pair must
    meet the ball. The reward of arm X is c_X . u with c_X the normalised
    first row of X, which is 1-Lipschitz.

    Raises:
        ValueError: If a given arm is rank deficient or some hyperplane misses the ball.
    """
    rng = make_rng(seed)
    if hypotheses is None:
        g = rng.standard_normal((n_hyps, n))
        hyps = g / np.linalg.norm(g, axis=1, keepdims=True)
    else:
        hyps = np.atleast_2d(np.asarray(hypotheses, dtype=float))
    if np.any(np.linalg.norm(hyps, axis=1) == 0.0):
        raise ValueError("hypotheses must be nonzero")
    if arms is None:
        mats = np.array([_random_arm(rng, n, m, hyps) for _ in range(n_arms)])
    else:
        mats = np.asarray(arms, dtype=float).reshape(-1, n, m + 1)
        for k, x in enumerate(mats):
            if np.linalg.matrix_rank(x) < min(n, m + 1):
                raise ValueError(f"arm {k} is not of full rank")
            bad = [h for h, theta in enumerate(hyps) if not _meets_ball(x, theta)]
            if bad:
                raise ValueError(f"arm {k}: hyperplanes of hypotheses {bad} miss the ball")
    tensors = mats[:, None, :, :]
    family = HypothesisFamily(mats.reshape(mats.shape[0], -1), hyps, tensors)
    coef = np.zeros((mats.shape[0], m + 1))
    coef[:, :m] = mats[:, 0, :m] / np.linalg.norm(mats[:, 0, :m], axis=1, keepdims=True)
    reward = RewardSpec(coef, np.zeros(mats.shape[0]))
    meta = {
        "grid": {"n": n, "m": m, "seed": seed},
        "known_values": [{"quantity": "dim_w", "value": 1, "provenance": "derived: one hyperplane"}],
    }
    logger.info(f"Built hyperplane_scenario with {mats.shape[0]} arms and {hyps.shape[0]} hypotheses")
    return Scenario("hyperplane", OutcomeSpace(Ball(m)), family, reward, meta)


def traffic_reward(durations) -> np.ndarray:
    """
    Reward covector on (1, y_AB, y_AC, y_DE) for light durations
    (Bg, Br, Cg, Cr): minus half the expected red-light waiting time.
    """
    bg, br, cg, cr = (float(v) for v in durations)
    return -0.5 * np.array([
        0.0,
        br**2 / (bg + br),
        cr**2 / (cg + cr),
        bg**2 / (bg + br) + cg**2 / (cg + cr),
    ])


def traffic_abcde(tau_min: float = 1.0, tau_max: float = 2.0, grid: int = 2, h_res: int = 3) -> Scenario:
    """
    Two intersections of the DE road with the AB and AC roads. Outcomes are
    normalised trip counts in [0, 1]^3; hypotheses fix E[y_DE] = theta_DE
    and E[y_AB + y_AC] = theta_A.

    The waiting-time reward is divided by its largest Lipschitz constant
    over the arm grid when that exceeds 1; the factor is kept in meta.
    """
    if not 0.0 < tau_min < tau_max:
        raise ValueError("durations need 0 < tau_min < tau_max")
    cube = np.array([[1.0, *corner] for corner in itertools.product((0.0, 1.0), repeat=3)])
    taus = np.linspace(tau_min, tau_max, grid)
    arms = np.array(list(itertools.product(taus, repeat=4)))
    coef = np.array([traffic_reward(x) for x in arms])
    # Lipschitz constant on the cube is half the range of c over its vertices
    scale = max(1.0, float(np.max(0.5 * np.abs(coef).sum(axis=1))))
    levels = np.linspace(0.0, 1.0, h_res)
    hyps = np.array([[de, a, 1.0] for de, a in itertools.product(levels, levels)])
    tensor = np.zeros((2, 3, 4))
    tensor[0, 2, 3], tensor[0, 0, 0] = 1.0, -1.0
    tensor[1, 2, 1], tensor[1, 2, 2], tensor[1, 1, 0] = 1.0, 1.0, -1.0
    family = HypothesisFamily(arms, hyps, np.broadcast_to(tensor, (arms.shape[0], 2, 3, 4)))
    reward = RewardSpec(coef / scale, np.zeros(arms.shape[0]))
    meta = {
        "grid": {"durations": grid, "h_res": h_res, "tau_min": tau_min, "tau_max": tau_max},
        "reward_scale": scale,
        "coordinates": ["mu", "AB", "AC", "DE"],
        "known_values": [{"quantity": "dim_w", "value": 2, "provenance": "derived: two constraints"}],
    }
    logger.info(f"Built traffic_abcde with {arms.shape[0]} arms, reward scale {scale:.4g}")
    return Scenario("traffic_abcde", OutcomeSpace(Polytope(cube)), family, reward, meta)


def _append_new_rows(base: np.ndarray, extra: np.ndarray) -> np.ndarray:
    rows = list(base)
    for row in extra:
        if not any(np.allclose(row, r) for r in rows):
            rows.append(row)
    return np.array(rows)


def lower_s_scenario(D: int = 4, alpha: float = 0.25, arm_res: int = 16, h_res: int = 8) -> Scenario:
    """
    The cone body with hypotheses (1 - alpha, -alpha, 2 alpha u) for unit u,
    F = z . y and reward x . y_{2:} for unit arms x.

    The arm grid starts with -u for every hypothesis direction u, so
    arm h is the optimal arm of hypothesis h.
    """
    if D < 1:
        raise ValueError("D must be positive")
    if not 0.0 < alpha <= 0.25:
        raise ValueError(f"alpha must lie in (0, 1/4], got {alpha}")
    us = sphere_points(D, h_res)
    arms = _append_new_rows(-us, sphere_points(D, arm_res))
    hyps = np.column_stack([np.full(us.shape[0], 1.0 - alpha), np.full(us.shape[0], -alpha), 2 * alpha * us])
    tensors = np.broadcast_to(np.eye(D + 2)[None, None], (arms.shape[0], 1, D + 2, D + 2))
    coef = np.column_stack([np.zeros((arms.shape[0], 2)), arms])
    family = HypothesisFamily(arms, hyps, tensors)
    reward = RewardSpec(coef, np.zeros(arms.shape[0]))
    meta = {
        "alpha": alpha,
        "D": D,
        "grid": {"arm_res": arm_res, "h_res": h_res},
        "known_values": [
            {"quantity": "R", "value": 1.0, "provenance": "closed form: R = 1 for the cone family"},
            {"quantity": "S", "value": 2 * alpha / math.sqrt(1 + 4 * alpha**2),
             "provenance": "closed form: sine against the base plane"},
            {"quantity": "lower_prevision[0,0]", "value": -0.5, "provenance": "closed form: value at x* = -u*"},
            {"quantity": "C", "value": 2.0, "provenance": "closed form: C = 2"},
            {"quantity": "dim_w", "value": 1, "provenance": "one constraint"},
        ],
    }
    logger.info(f"Built lower_s_scenario D={D} alpha={alpha}: {arms.shape[0]} arms, {hyps.shape[0]} hypotheses")
    return Scenario("lower_s", OutcomeSpace(ConeBall(D)), family, reward, meta)


def lower_r_scenario(lam: float = 4.0, alpha: float = 7 * math.pi / 16, arm_res: int = 9, h_res: int = 9) -> Scenario:
    """
    The disk body with F = z^T (I + lam x x^T)(y0, y1) and reward -y0.

    Arms are unit x at angles in [alpha, pi - alpha]; hypotheses are unit
    theta at angles in [alpha - pi/2, pi/2 - alpha]. With arm_res == h_res,
    arm k is orthogonal to hypothesis k.
    """
    if lam <= 0.0:
        raise ValueError(f"lam must be positive, got {lam}")
    if not 3 * math.pi / 8 < alpha < math.pi / 2:
        raise ValueError(f"alpha must lie in (3pi/8, pi/2), got {alpha}")
    phis = np.linspace(alpha, math.pi - alpha, arm_res)
    omegas = np.linspace(alpha - math.pi / 2, math.pi / 2 - alpha, h_res)
    arms = np.column_stack([np.cos(phis), np.sin(phis)])
    hyps = np.column_stack([np.cos(omegas), np.sin(omegas)])
    tensors = np.zeros((arm_res, 1, 2, 3))
    tensors[:, 0, :, :2] = np.eye(2)[None] + lam * np.einsum("xi,xj->xij", arms, arms)
    family = HypothesisFamily(arms, hyps, tensors)
    reward = RewardSpec.shared([-1.0, 0.0, 0.0], 0.0, arm_res)
    known = [
        {"quantity": "S", "value": 1.0, "provenance": "closed form: S = 1 for the disk family"},
        {"quantity": "R", "value": lam + 1.0, "provenance": "closed form: R <= lam + 1", "relation": "le"},
        {"quantity": "C", "value": 2.0, "provenance": "closed form: C = 2"},
    ]
    if arm_res == h_res:
        known.append({"quantity": "lower_prevision[0,0]", "value": -math.cos(alpha),
                      "provenance": "closed form: value -|theta_1| at x orthogonal to theta"})
    meta = {"lam": lam, "alpha": alpha, "grid": {"arm_res": arm_res, "h_res": h_res}, "known_values": known}
    logger.info(f"Built lower_r_scenario lam={lam} alpha={alpha:.4f}")
    return Scenario("lower_r", OutcomeSpace(Ball(2)), family, reward, meta)
