"""
Minimum norms on affine subspaces and distances between convex sets.
"""

from __future__ import annotations

import numpy as np

from src.errors import (
    EmptyIntersectionError,
    NotOnHyperplaneError,
    NumericalBreakdownError,
    UnsupportedBodyError,
)
from src.geometry.affine import AffineSubspace
from src.geometry.bodies import ConvexBody, Polytope
from src.geometry.norms import (
    L2Norm,
    NormSpec,
    add_norm_bound,
    is_polyhedral,
    l2_weights,
    norm_eval,
    norm_subgradient,
)
from src.geometry.sections import BodySection
from src.logger.logging_config import get_logger
from src.numkit import LPBuilder, subgradient_minimize
from src.numkit.tolerances import get_tolerance

logger = get_logger(__name__)

ALTERNATING_PROJECTION_MAX_ITER = 2000


def min_norm_on_affine(n: NormSpec, s: AffineSubspace) -> tuple[np.ndarray, float]:
    """
    Minimise ||y|| over an affine subspace.

    L2 metrics are solved exactly by least squares over the direction
    coefficients, polyhedral norms by an LP, anything else by subgradient
    descent on the kernel parametrisation.

    Parameters:
        n (NormSpec): The norm.
        s (AffineSubspace): A nonempty subspace (construction already
            raised EmptySubspaceError otherwise).

    Returns:
        tuple[np.ndarray, float]: (minimiser, minimum).
    """
    if s.dim == 0:
        return s.point.copy(), norm_eval(n, s.point)

    if isinstance(n, L2Norm):
        root_w = np.sqrt(l2_weights(n, s.ambient_dim))
        coef, *_ = np.linalg.lstsq(root_w[:, None] * s.basis, -root_w * s.point, rcond=None)
        y = s.point + s.basis @ coef
        return y, norm_eval(n, y)

    if is_polyhedral(n):
        lp = LPBuilder()
        lp.add_variables("y", s.ambient_dim, lower=-np.inf)
        lp.add_variables("t", 1)
        if s.a.shape[0]:
            lp.add_eq({"y": s.a}, s.b)
        add_norm_bound(lp, n, {"y": np.eye(s.ambient_dim)}, np.zeros(s.ambient_dim), "t")
        lp.set_objective({"t": [1.0]})
        solution, parts = lp.solve()
        if not solution.optimal:
            raise NumericalBreakdownError(f"min-norm LP ended {solution.status.value}")
        return parts["y"], max(0.0, solution.value)

    def oracle(coef):
        y = s.point + s.basis @ coef
        return norm_eval(n, y), s.basis.T @ norm_subgradient(n, y)

    coef, value = subgradient_minimize(oracle, np.zeros(s.dim))
    return s.point + s.basis @ coef, value


def dist_point_to_affine(n: NormSpec, p, s: AffineSubspace) -> float:
    """min ||p - y|| over y in s."""
    point = np.asarray(p, dtype=float).reshape(-1)
    if s.contains(point):
        return 0.0
    return min_norm_on_affine(n, s.translate(-point))[1]


def _as_polytope_section(body) -> BodySection:
    section = body if isinstance(body, BodySection) else BodySection(
        body, np.zeros((0, body.dim)), np.zeros(0)
    )
    if not isinstance(section.body, Polytope):
        raise UnsupportedBodyError(
            f"distance between convex sets needs polytopes, got {type(section.body).__name__}"
        )
    return section


def dist_between_convex(n: NormSpec, p: ConvexBody | BodySection, q: ConvexBody | BodySection) -> float:
    """
    min ||a - b|| over a in P, b in Q for polytopes or polytope sections.

    Polyhedral norms give a single LP; L2 metrics use alternating
    projections to tolerance tol_opt.

    Raises:
        UnsupportedBodyError: For non-polytope bodies or other norms.
        EmptyIntersectionError: If a section is empty.
    """
    sp, sq = _as_polytope_section(p), _as_polytope_section(q)
    vp, vq = sp.body.vertices, sq.body.vertices

    if is_polyhedral(n):
        lp = LPBuilder()
        lp.add_variables("zp", vp.shape[0])
        lp.add_variables("zq", vq.shape[0])
        lp.add_variables("t", 1)
        lp.add_eq({"zp": np.ones((1, vp.shape[0]))}, [1.0])
        lp.add_eq({"zq": np.ones((1, vq.shape[0]))}, [1.0])
        if sp.a_eq.shape[0]:
            lp.add_eq({"zp": sp.a_eq @ vp.T}, sp.b_eq)
        if sq.a_eq.shape[0]:
            lp.add_eq({"zq": sq.a_eq @ vq.T}, sq.b_eq)
        add_norm_bound(lp, n, {"zp": vp.T, "zq": -vq.T}, np.zeros(vp.shape[1]), "t")
        lp.set_objective({"t": [1.0]})
        solution, _ = lp.solve()
        if not solution.optimal:
            raise EmptyIntersectionError("a polytope section is empty")
        return max(0.0, solution.value)

    if isinstance(n, L2Norm):
        tol = get_tolerance("tol_opt")
        b = sq.point()
        a = sp.body.project(n, b, sp.a_eq, sp.b_eq)
        previous = np.inf
        for _ in range(ALTERNATING_PROJECTION_MAX_ITER):
            b = sq.body.project(n, a, sq.a_eq, sq.b_eq)
            a = sp.body.project(n, b, sp.a_eq, sp.b_eq)
            current = norm_eval(n, a - b)
            if previous - current <= tol:
                return current
            previous = current
        logger.warning("alternating projections hit the iteration cap")
        return current

    raise UnsupportedBodyError(f"no distance routine for {type(n).__name__}")


def l1_dist_to_simplex(y) -> float:
    """
    L1 distance from a point of the hyperplane sum(y) = 1 to the simplex:
    sum |y_a| - 1.

    Raises:
        NotOnHyperplaneError: If sum(y) differs from 1 by more than tol_feas.
    """
    vec = np.asarray(y, dtype=float).reshape(-1)
    if abs(vec.sum() - 1.0) > get_tolerance("tol_feas"):
        raise NotOnHyperplaneError(f"coordinates sum to {vec.sum():.12g}, not 1")
    return max(0.0, float(np.sum(np.abs(vec))) - 1.0)
