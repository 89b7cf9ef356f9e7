"""
Families whose credal sections are single points or hyperplanes of a
scalar feedback: point-valued families, finite stochastic bandits, linear
bandits (with the torus instance) and the moment-curve embedding.

The constraint maps here are affine in the hypothesis. They are made
bilinear by appending one coordinate to Z that every hypothesis fixes to 1.
"""

from __future__ import annotations

import itertools

import numpy as np

from src.geometry import ConvexBody, Polytope, Segment
from src.logger.logging_config import get_logger
from src.model import HypothesisFamily, OutcomeSpace, RewardSpec
from src.scenarios.scenario import Scenario

logger = get_logger(__name__)

SCALAR_SEGMENT = ((1.0, -1.0), (1.0, 1.0))


def point_valued_scenario(
    name: str,
    body: ConvexBody,
    arms,
    hypotheses,
    f_tensor,
    psi,
    reward: RewardSpec,
    meta: dict | None = None,
) -> Scenario:
    """
    K_theta(x)+ = {f(x, theta)} through F(x, z, y) = psi(z) y - mu(y) f(x, z).

    W = ker mu is represented by dropping the coordinate where |mu| is
    largest, which keeps F onto.

    Parameters:
        name (str): Scenario name.
        body (ConvexBody): Outcome body.
        arms (array_like): Arm features, one row per arm.
        hypotheses (array_like): Hypotheses in Z, each with psi(theta) = 1.
        f_tensor (array_like): f(x, z) = f_tensor[x] @ z, shape (n_arms, D_Y, D_Z).
        psi (array_like): The covector psi on Z.
        reward (RewardSpec): Reward per arm.
        meta (dict | None): Extra metadata.

    Returns:
        Scenario: The point-valued scenario.
    """
    mu = body.mu
    f = np.asarray(f_tensor, dtype=float)
    psi = np.asarray(psi, dtype=float).reshape(-1)
    dim_y = mu.shape[0]
    keep = [j for j in range(dim_y) if j != int(np.argmax(np.abs(mu)))]
    # full[x, w, i, j] = psi_i delta_wj - mu_j f[x, w, i]
    full = np.einsum("i,wj->wij", psi, np.eye(dim_y))[None] - np.einsum("xwi,j->xwij", f, mu)
    family = HypothesisFamily(arms, hypotheses, full[:, keep])
    meta = dict(meta or {})
    meta.setdefault("structure", "point-valued")
    return Scenario(name, OutcomeSpace(body), family, reward, meta)


def _scalar_f(n_arms: int, dim_z: int, mean_rows) -> np.ndarray:
    """f(x, z) = (z_last, mean_rows[x] . z) for the scalar segment body."""
    f = np.zeros((n_arms, 2, dim_z))
    f[:, 0, -1] = 1.0
    f[:, 1, :] = mean_rows
    return f


def finite_stochastic(means, hypotheses=None) -> Scenario:
    """
    A stochastic bandit with expected rewards in [-1, 1] per arm.

    Outcomes are (1, t) for the observed reward t. The hypothesis grid is
    the true mean vector followed by its cyclic shifts unless given.
    """
    means = np.asarray(means, dtype=float).reshape(-1)
    if np.any(np.abs(means) > 1.0):
        raise ValueError("stochastic means must lie in [-1, 1]")
    k = means.shape[0]
    if hypotheses is None:
        hyps = np.array([np.roll(means, s) for s in range(k)])
    else:
        hyps = np.atleast_2d(np.asarray(hypotheses, dtype=float))
    if hyps.shape[1] != k:
        raise ValueError(f"hypotheses need {k} means each, got {hyps.shape[1]}")
    hyps_z = np.column_stack([hyps, np.ones(hyps.shape[0])])
    psi = np.zeros(k + 1)
    psi[-1] = 1.0
    arms = np.eye(k)
    f = _scalar_f(k, k + 1, np.column_stack([arms, np.zeros(k)]))
    reward = RewardSpec.shared([0.0, 1.0], 0.0, k)
    best = float(np.max(means))
    meta = {
        "grid": {"hypotheses": int(hyps.shape[0])},
        "known_values": [
            {"quantity": "dim_w", "value": 1, "provenance": "construction"},
            {"quantity": "C", "value": 2.0, "provenance": "rewards in [-1, 1]"},
            {"quantity": "optimal_value[0]", "value": best, "provenance": "best mean"},
            {"quantity": "R", "value": 2.0, "provenance": "point-valued families", "relation": "le"},
        ],
    }
    scenario = point_valued_scenario(
        "finite_stochastic", Segment(*SCALAR_SEGMENT), arms, hyps_z, f, psi, reward, meta
    )
    logger.info(f"Built finite_stochastic with {k} arms and {hyps.shape[0]} hypotheses")
    return scenario


def linear_bandit(arms, hypotheses, name: str = "linear_bandit", meta: dict | None = None) -> Scenario:
    """
    Stochastic linear bandit: F row (x.theta, -1) on outcomes (1, t),
    reward t. Hypotheses must keep every x.theta in [-1, 1].
    """
    arms = np.atleast_2d(np.asarray(arms, dtype=float))
    hyps = np.atleast_2d(np.asarray(hypotheses, dtype=float))
    if hyps.shape[1] != arms.shape[1]:
        raise ValueError(f"arms have dimension {arms.shape[1]}, hypotheses {hyps.shape[1]}")
    if np.max(np.abs(arms @ hyps.T)) > 1.0 + 1e-12:
        raise ValueError("some arm-hypothesis pair has |x.theta| > 1")
    d = arms.shape[1]
    tensors = np.zeros((arms.shape[0], 1, d + 1, 2))
    tensors[:, 0, :d, 0] = arms
    tensors[:, 0, d, 1] = -1.0
    family = HypothesisFamily(arms, np.column_stack([hyps, np.ones(hyps.shape[0])]), tensors)
    reward = RewardSpec.shared([0.0, 1.0], 0.0, arms.shape[0])
    meta = dict(meta or {})
    meta.setdefault("structure", "linear")
    return Scenario(name, OutcomeSpace(Segment(*SCALAR_SEGMENT)), family, reward, meta)


def torus_points(n: int, resolution: int) -> np.ndarray:
    """Product of n circles, each sampled at `resolution` equally spaced angles."""
    angles = 2 * np.pi * np.arange(resolution) / resolution
    circle = np.column_stack([np.cos(angles), np.sin(angles)])
    return np.array([np.concatenate(combo) for combo in itertools.product(circle, repeat=n)])


def dhk_torus(n: int = 1, arm_res: int = 8, h_res: int = 8) -> Scenario:
    """
    Linear bandit on the torus of n unit circles, hypotheses on the torus
    scaled by 1/n together with the origin.

    R = 2 is attained on the grid when the arm angles are among the
    hypothesis angles (h_res a multiple of arm_res).
    """
    arms = torus_points(n, arm_res)
    hyps = np.vstack([np.zeros(2 * n), torus_points(n, h_res) / n])
    exact = h_res % arm_res == 0
    meta = {
        "grid": {"arm_res": arm_res, "h_res": h_res, "n": n},
        "known_values": [
            {"quantity": "R", "value": 2.0, "provenance": "closed form: R = 2 on the torus",
             "relation": "eq" if exact else "le"},
            {"quantity": "S", "value": 1.0, "provenance": "closed form: d = 1 gives S = 1"},
            {"quantity": "C", "value": 2.0, "provenance": "closed form: C = 2"},
            {"quantity": "dim_w", "value": 1, "provenance": "closed form: D_W = 1"},
        ],
    }
    scenario = linear_bandit(arms, hyps, name="dhk_torus", meta=meta)
    logger.info(f"Built dhk_torus n={n}: {arms.shape[0]} arms, {hyps.shape[0]} hypotheses")
    return scenario


def moment_curve(n: int, samples: int) -> np.ndarray:
    t = np.linspace(-1.0, 1.0, samples)
    return np.column_stack([t**k for k in range(n + 1)])


def moment_scenario(n: int = 2, curve_samples: int = 65, arm_res: int = 5, h_res: int = 5) -> Scenario:
    """
    Scalar rewards t in [-1, 1] embedded as (1, t, ..., t^n) in the hull of
    the sampled moment curve.

    Arm x in [-1, 1] promises the mean x * m for the unknown m in [-1, 1].
    The reward of outcome t is t - t^2 / 2 (t for n = 1), a mean-variance
    trade-off that is 1-Lipschitz in the hull norm; with n >= 2 the worst
    case pushes the second moment to 1, so the lower prevision is x m - 1/2.
    """
    if n < 1:
        raise ValueError("the moment curve needs n >= 1")
    body = Polytope(moment_curve(n, curve_samples))
    arm_levels = np.linspace(-1.0, 1.0, arm_res)
    m_levels = np.linspace(-1.0, 1.0, h_res)
    tensors = np.zeros((arm_res, 1, 2, n + 1))
    tensors[:, 0, 1, 1] = 1.0
    tensors[:, 0, 0, 0] = -arm_levels
    hyps = np.column_stack([m_levels, np.ones(h_res)])
    family = HypothesisFamily(arm_levels.reshape(-1, 1), hyps, tensors)
    c = np.zeros(n + 1)
    c[1] = 1.0
    if n >= 2:
        c[2] = -0.5
    reward = RewardSpec.shared(c, 0.0, arm_res)
    top = float(m_levels[-1])
    meta = {
        "grid": {"curve_samples": curve_samples, "arm_res": arm_res, "h_res": h_res},
        "body_exact": False,
        "known_values": [
            {"quantity": "dim_w", "value": 1, "provenance": "derived: one moment constraint"},
            {"quantity": f"optimal_value[{h_res - 1}]",
             "value": top - 0.5 if n >= 2 else top,
             "provenance": "derived: worst case second moment 1"},
        ],
    }
    logger.info(f"Built moment_scenario n={n} with {curve_samples} curve samples")
    return Scenario("moment", OutcomeSpace(body), family, reward, meta)
