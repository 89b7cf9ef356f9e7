"""
Certificate computation for a whole scenario, and the JSON certificate
report with evaluated bound rows.
"""

from __future__ import annotations

import math

from src.certificates.bounds import (
    Certificates,
    Dims,
    bound_gap,
    bound_main,
    bound_simplex,
    recommended_eta_main,
    recommended_eta_simplex,
)
from src.certificates.gap import gap_compute
from src.certificates.params import param_C, param_R, param_S
from src.certificates.wnorm import CERTIFICATE_CONFIG, build_wnorm
from src.certificates.zbar import build_zbar
from src.geometry import Polytope
from src.logger.logging_config import get_logger
from src.logger.timing import Timer
from src.model import HypothesisFamily, OutcomeSpace, RewardSpec

logger = get_logger(__name__)

THEOREMS = ("main", "simplex", "gap")


def family_dims(fam: HypothesisFamily, space: OutcomeSpace) -> Dims:
    """D_Z, D_W and, for simplex bodies, the label count."""
    body = space.body
    labels = body.vertices.shape[0] if isinstance(body, Polytope) and body.is_simplex else None
    return Dims(dim_z=fam.dim_z, dim_w=fam.dim_w, labels=labels)


def compute_certificates(
    fam: HypothesisFamily,
    space: OutcomeSpace,
    reward: RewardSpec,
    s_method: str = "auto",
    seed: int = 0,
    table=None,
) -> Certificates:
    """
    R, S, C and the gap of a family, with the estimator behind each.

    Parameters:
        fam (HypothesisFamily): The family.
        space (OutcomeSpace): The outcome space.
        reward (RewardSpec): The reward.
        s_method (str): Sine estimator, see S_METHODS.
        seed (int): Seed for sampled sine estimates.
        table (np.ndarray | None): A precomputed prevision table.

    Returns:
        Certificates: The four values and their provenance.
    """
    with Timer("compute_certificates", arms=fam.n_arms, hypotheses=fam.n_hypotheses):
        wnorm = build_wnorm(fam, space)
        zb = build_zbar(fam, space, wnorm)
        radius = param_R(fam, space, zb)
        sine = param_S(fam, space, s_method, seed=seed)
        width = param_C(reward, space, fam)
        gap = gap_compute(fam, reward, space, table)
    methods = {
        "R": f"zbar/{wnorm.method}" + ("" if wnorm.exact else " (grid)"),
        "S": ",".join(f"{name}:{count}" for name, count in sorted(sine.methods.items())),
        "C": "support",
        "gap": "section-distance" if gap.supported else "unsupported",
    }
    cert = Certificates(R=radius, S=sine.value, C=width, gap=gap.value, methods=methods)
    logger.info(f"certificates R={radius:.6g} S={sine.value:.6g} C={width:.6g} gap={gap.value:.6g}")
    return cert


def _finite_or_none(value: float):
    return float(value) if math.isfinite(value) else None


def bound_rows(
    cert: Certificates,
    dims: Dims,
    horizons,
    eta: float | None = None,
    delta: float | None = None,
    theorems=None,
) -> list[dict]:
    """
    Evaluate the requested bounds at each horizon.

    eta defaults to the theorem's recommended value and delta to 1/sqrt(N).
    Without an explicit theorem list, the simplex bound is added for
    simplex bodies and the gap bound when the gap is positive.

    Raises:
        ZeroGapError: If "gap" is requested and the gap is not positive.
        ValueError: On an unknown theorem name.
    """
    if theorems is None:
        theorems = ["main"]
        if dims.labels:
            theorems.append("simplex")
        if cert.gap > 0.0:
            theorems.append("gap")
    unknown = set(theorems) - set(THEOREMS)
    if unknown:
        raise ValueError(f"unknown theorems {sorted(unknown)}")

    rows = []
    for n in horizons:
        n = int(n)
        d = 1.0 / math.sqrt(n) if delta is None else float(delta)
        for name in theorems:
            match name:
                case "main":
                    e = recommended_eta_main(cert, dims, n) if eta is None else eta
                    value = bound_main(cert, dims, n, e, d)
                case "simplex":
                    e = recommended_eta_simplex(cert, dims, n) if eta is None else eta
                    value = bound_simplex(cert, dims, n, e, d)
                case "gap":
                    e = recommended_eta_main(cert, dims, n) if eta is None else eta
                    value = bound_gap(cert, dims, n, e)
            rows.append({"theorem": name, "N": n, "eta": e, "delta": d, "value": value})
    return rows


def certificate_report(
    cert: Certificates,
    dims: Dims,
    horizons=(),
    eta: float | None = None,
    delta: float | None = None,
    theorems=None,
) -> dict:
    """
    JSON-ready report {R, S, C, gap, methods, grid_resolutions, bounds}.

    Non-finite values (an infinite gap, an infinite bound) are written as null.
    """
    rows = bound_rows(cert, dims, horizons, eta, delta, theorems)
    for row in rows:
        row["value"] = _finite_or_none(row["value"])
    return {
        "R": cert.R,
        "S": cert.S,
        "C": cert.C,
        "gap": _finite_or_none(cert.gap),
        "methods": dict(cert.methods),
        "grid_resolutions": {
            "w_grid": CERTIFICATE_CONFIG["w_grid"],
            "ball_grid": CERTIFICATE_CONFIG["ball_grid"],
            "sine_samples": CERTIFICATE_CONFIG["sine_samples"],
        },
        "bounds": rows,
    }
