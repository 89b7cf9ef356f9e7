"""
Regret-bound evaluators and the concentration bounds behind them.

The general and gap bounds contain an unspecified constant in their
exponential terms; it is the `c_exp` argument (CERTIFICATE_CONFIG["c_exp"]
by default). The simplex bound has only explicit constants.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

from src.certificates.wnorm import CERTIFICATE_CONFIG
from src.errors import ZeroGapError


@dataclass(frozen=True)
class Certificates:
    R: float
    S: float
    C: float
    gap: float = math.inf
    # estimator behind each value
    methods: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Dims:
    dim_z: int
    dim_w: int
    # number of labels when the body is a simplex
    labels: int | None = None


def gamma_constant() -> float:
    """1 / ln(1 / (1 - e^-2))."""
    return 1.0 / -math.log(1.0 - math.exp(-2.0))


def _log_pos(value: float) -> float:
    if value <= 0.0:
        return 0.0
    return max(0.0, math.log(value))


def _exp_tail(cert: Certificates, dims: Dims, n: int, eta: float, c_exp: float) -> float:
    exponent = -c_exp * eta**2 / (cert.R**2 * dims.dim_w ** (5.0 / 3.0)) if cert.R > 0 else -math.inf
    return cert.C * dims.dim_w * n**2 * (n + 1) * math.exp(exponent)


def _shared_terms(cert: Certificates, dims: Dims, n: int, eta: float, delta: float) -> float:
    if delta <= 0.0:
        return math.inf
    gamma = gamma_constant()
    dz = dims.dim_z
    inv_s = 1.0 / cert.S + 1.0
    log_term = _log_pos(dz * cert.R / delta)
    optimism = 8.0 * eta * inv_s * dz * (dz + 1) * math.sqrt(gamma * log_term * n)
    burn_in = gamma * cert.C * dz**2 * log_term
    slack = inv_s * dz * (36 * dz + 8) * n * delta
    return optimism + burn_in + slack


def bound_main(
    cert: Certificates,
    dims: Dims,
    n: int,
    eta: float,
    delta: float,
    c_exp: float | None = None,
) -> float:
    """
    Regret bound for any body.

    Parameters:
        cert (Certificates): R, S, C.
        dims (Dims): D_Z and D_W.
        n (int): Horizon N.
        eta (float): IUCB parameter.
        delta (float): Free accuracy parameter; the bound is +inf at 0.
        c_exp (float | None): Constant of the exponential term.

    Returns:
        float: The bound on expected regret.
    """
    c_exp = CERTIFICATE_CONFIG["c_exp"] if c_exp is None else c_exp
    return _shared_terms(cert, dims, n, eta, delta) + _exp_tail(cert, dims, n, eta, c_exp)


def bound_simplex(cert: Certificates, dims: Dims, n: int, eta: float, delta: float, labels: int | None = None) -> float:
    """Regret bound when the body is the simplex on `labels` outcomes."""
    labels = labels or dims.labels
    if not labels:
        raise ValueError("bound_simplex needs the label count")
    k = dims.dim_w + 1
    covering = (2.0 * math.e * labels / k) ** k
    exponent = -(eta**2) / (2.0 * cert.R**2) if cert.R > 0 else -math.inf
    tail = 0.5 * cert.C * covering * n**2 * (n + 1) * math.exp(exponent)
    return _shared_terms(cert, dims, n, eta, delta) + tail


def bound_gap(
    cert: Certificates,
    dims: Dims,
    n: int,
    eta: float,
    gap: float | None = None,
    c_exp: float | None = None,
) -> float:
    """
    Logarithmic regret bound under a positive gap.

    Raises:
        ZeroGapError: If the gap is not positive.
    """
    g = cert.gap if gap is None else gap
    if not g > 0.0:
        raise ZeroGapError(f"the gap bound needs g > 0, got {g}")
    c_exp = CERTIFICATE_CONFIG["c_exp"] if c_exp is None else c_exp
    dz = dims.dim_z
    inv_s = 1.0 / cert.S
    if math.isinf(g):
        head = 0.0
    else:
        coeff = 256.0 * inv_s * (inv_s + 1.0) * (dz + 1) ** 2 * eta**2 / g + cert.C
        head = gamma_constant() * dz**2 * coeff * _log_pos(144.0 * inv_s * dz**3 * cert.R / g)
    return head + _exp_tail(cert, dims, n, eta, c_exp)


def recommended_eta_main(cert: Certificates, dims: Dims, n: int, scale: float = 1.0) -> float:
    """scale * R * D_W^(5/6) * sqrt(ln(C D_W N))."""
    return scale * cert.R * dims.dim_w ** (5.0 / 6.0) * math.sqrt(_log_pos(cert.C * dims.dim_w * n))


def recommended_eta_simplex(cert: Certificates, dims: Dims, n: int, labels: int | None = None) -> float:
    """R * sqrt(2 (D_W + 1) ln(C N^3 |B| / (D_W + 1)))."""
    labels = labels or dims.labels
    k = dims.dim_w + 1
    return cert.R * math.sqrt(2.0 * k * _log_pos(cert.C * n**3 * labels / k))


def concentration_bound_general(dims: Dims, tau: int, delta: float, c_exp: float | None = None) -> float:
    """2 D_W exp(-c tau delta^2 / D_W^(5/3)), capped at 1."""
    c_exp = CERTIFICATE_CONFIG["c_exp"] if c_exp is None else c_exp
    return min(1.0, 2.0 * dims.dim_w * math.exp(-c_exp * tau * delta**2 / dims.dim_w ** (5.0 / 3.0)))


def concentration_bound_simplex(dims: Dims, tau: int, delta: float, labels: int | None = None) -> float:
    """(2e|B| / (D_W + 1))^(D_W + 1) exp(-tau delta^2 / 2), capped at 1."""
    labels = labels or dims.labels
    k = dims.dim_w + 1
    return min(1.0, (2.0 * math.e * labels / k) ** k * math.exp(-0.5 * tau * delta**2))
