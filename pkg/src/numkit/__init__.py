"""
Numerical kit: tolerances, dense linear algebra, the two-phase simplex LP
solver and seeded random streams. Every optimization in the toolkit reduces
to these primitives.
"""

from .linalg import (
    as_finite_matrix,
    as_finite_vector,
    kernel_basis,
    least_squares_min_norm,
    rank,
    row_space_basis,
)
from .lp import LPBuilder, LPProblem, LPSolution, LPStatus, chebyshev_residual, lp_solve
from .optimize import SUBGRADIENT_CONFIG, subgradient_minimize
from .rng import make_rng, spawn_seeds
from .tolerances import (
    TOLERANCES,
    get_tolerance,
    reset_tolerances,
    set_tolerances,
    tolerances,
)

__all__ = [
    # linalg.py
    "as_finite_matrix",
    "as_finite_vector",
    "kernel_basis",
    "least_squares_min_norm",
    "rank",
    "row_space_basis",
    # lp.py
    "LPBuilder",
    "LPProblem",
    "LPSolution",
    "LPStatus",
    "chebyshev_residual",
    "lp_solve",
    # optimize.py
    "SUBGRADIENT_CONFIG",
    "subgradient_minimize",
    # rng.py
    "make_rng",
    "spawn_seeds",
    # tolerances.py
    "TOLERANCES",
    "get_tolerance",
    "reset_tolerances",
    "set_tolerances",
    "tolerances",
]
