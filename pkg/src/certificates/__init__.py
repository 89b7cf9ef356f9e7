"""
Computable certificates of a hypothesis class: the W and Z-bar norms, the
parameters R, S, C and the gap, and the regret-bound evaluators.
"""

from .bounds import (
    Certificates,
    Dims,
    bound_gap,
    bound_main,
    bound_simplex,
    concentration_bound_general,
    concentration_bound_simplex,
    gamma_constant,
    recommended_eta_main,
    recommended_eta_simplex,
)
from .gap import GapResult, gap_compute, qualifying_pairs
from .params import (
    S_METHODS,
    SineReport,
    cell_sine,
    chain_r_bound,
    hyperplane_r_bound,
    param_C,
    param_R,
    param_S,
)
from .report import THEOREMS, bound_rows, certificate_report, compute_certificates, family_dims
from .wnorm import CERTIFICATE_CONFIG, WNorm, build_wnorm, polar_vertices, w_norm
from .zbar import ZBarSpace, build_zbar, zbar_norm

__all__ = [
    # bounds.py
    "Certificates",
    "Dims",
    "bound_gap",
    "bound_main",
    "bound_simplex",
    "concentration_bound_general",
    "concentration_bound_simplex",
    "gamma_constant",
    "recommended_eta_main",
    "recommended_eta_simplex",
    # gap.py
    "GapResult",
    "gap_compute",
    "qualifying_pairs",
    # params.py
    "S_METHODS",
    "SineReport",
    "cell_sine",
    "chain_r_bound",
    "hyperplane_r_bound",
    "param_C",
    "param_R",
    "param_S",
    # report.py
    "THEOREMS",
    "bound_rows",
    "certificate_report",
    "compute_certificates",
    "family_dims",
    # wnorm.py
    "CERTIFICATE_CONFIG",
    "WNorm",
    "build_wnorm",
    "polar_vertices",
    "w_norm",
    # zbar.py
    "ZBarSpace",
    "build_zbar",
    "zbar_norm",
]
