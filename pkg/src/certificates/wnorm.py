"""
The norm on W.

||w||_W is the worst case, over grid cells (x, theta), of the least
y_norm of a preimage of w under F_{x theta}. Its unit ball is therefore the
intersection of the images F_{x theta}(B_Y), and since B_Y is the absolute
convex hull of the body, each image is the absolute convex hull of the
projected extreme points. The norm is held in dual form: a finite
symmetric set of functionals Lambda with ||w||_W = max |lambda . w|.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from src.errors import EmptySubspaceError, InfeasiblePreimageError
from src.geometry import AffineSubspace, Polytope, min_norm_on_affine, sphere_points
from src.logger.logging_config import get_logger
from src.logger.timing import Timer
from src.model import HypothesisFamily, OutcomeSpace, f_matrix

logger = get_logger(__name__)

CERTIFICATE_CONFIG = {
    # directions per sphere when the polar hull is degenerate
    "w_grid": 64,
    # boundary points standing in for a smooth body's extreme points
    "ball_grid": 1024,
    # the unspecified constant in the exponential terms
    "c_exp": 1.0,
    # samples per cell when the S certificate falls back to sampling
    "sine_samples": 2000,
}


@dataclass(frozen=True, eq=False)
class WNorm:
    """||w|| = max over rows lambda of |lambda . w|."""

    lambdas: np.ndarray = field(repr=False)
    exact: bool = True
    method: str = "polar-hull"

    @property
    def dim(self) -> int:
        return self.lambdas.shape[1]

    def __call__(self, w) -> float:
        vec = np.asarray(w, dtype=float).reshape(-1)
        return float(np.max(np.abs(self.lambdas @ vec)))


def polar_vertices(points: np.ndarray) -> np.ndarray:
    """
    Facet functionals a of conv(points) scaled so that a . p <= 1.

    The origin must be interior. For a centrally symmetric point set they
    are the vertices of the polar body.

    Raises:
        QhullError: If the hull is degenerate.
    """
    hull = ConvexHull(points)
    normals, offsets = hull.equations[:, :-1], hull.equations[:, -1]
    if np.any(offsets >= 0):
        raise QhullError("origin is not interior to the hull")
    return _unique_rows(normals / (-offsets[:, None]))


def _unique_rows(rows: np.ndarray) -> np.ndarray:
    _, idx = np.unique(np.round(rows, 12), axis=0, return_index=True)
    return rows[np.sort(idx)]


def _prune_symmetric(lambdas: np.ndarray) -> np.ndarray:
    """Keep the vertices of conv(+-Lambda), one of each +- pair."""
    if lambdas.shape[1] < 2 or lambdas.shape[0] <= lambdas.shape[1]:
        return lambdas
    both = np.vstack([lambdas, -lambdas])
    try:
        kept = ConvexHull(both).vertices
    except QhullError as exc:
        logger.warning(f"W-norm pruning skipped: {exc}")
        return lambdas
    return _unique_rows(lambdas[np.unique(kept % lambdas.shape[0])])


def _body_points(space: OutcomeSpace) -> tuple[np.ndarray, bool]:
    body = space.body
    if isinstance(body, Polytope):
        return body.vertices, True
    return body.extreme_points(CERTIFICATE_CONFIG["ball_grid"]), False


def w_norm(fam: HypothesisFamily, space: OutcomeSpace, w) -> float:
    """
    The primal definition: max over grid cells of min{||y|| : F_{x theta} y = w}.

    Raises:
        InfeasiblePreimageError: If some F_{x theta} does not reach w.
    """
    target = np.asarray(w, dtype=float).reshape(-1)
    if not np.any(target):
        return 0.0
    best = 0.0
    for x in range(fam.n_arms):
        for h in range(fam.n_hypotheses):
            f = f_matrix(fam, x, h)
            try:
                preimage = AffineSubspace.from_equations(f, target)
            except EmptySubspaceError as exc:
                raise InfeasiblePreimageError(
                    f"F for arm {x}, hypothesis {h} is not onto"
                ) from exc
            best = max(best, min_norm_on_affine(space.y_norm, preimage)[1])
    return float(best)


def _grid_lambdas(fam: HypothesisFamily, space: OutcomeSpace) -> np.ndarray:
    dirs = sphere_points(fam.dim_w, CERTIFICATE_CONFIG["w_grid"])
    values = np.array([w_norm(fam, space, u) for u in dirs])
    return polar_vertices(np.vstack([dirs / values[:, None], -dirs / values[:, None]]))


def build_wnorm(fam: HypothesisFamily, space: OutcomeSpace) -> WNorm:
    """
    Dual description of the W-norm.

    One-dimensional W is exact for every body: ||1||_W is the largest
    1 / ||f||_{Y*} over the grid. Otherwise each cell contributes the facet
    functionals of conv(+-F V) for the body's extreme points V (exact for
    polytopes, a boundary grid for smooth bodies).
    """
    body = space.body
    with Timer("build_wnorm", dim_w=fam.dim_w) as timer:
        if fam.dim_w == 1:
            scale = 0.0
            for x in range(fam.n_arms):
                for h in range(fam.n_hypotheses):
                    dual = body.dual_norm(f_matrix(fam, x, h)[0])
                    if dual <= 0.0:
                        raise InfeasiblePreimageError(f"F for arm {x}, hypothesis {h} vanishes")
                    scale = max(scale, 1.0 / dual)
            return WNorm(np.array([[scale]]), exact=True, method="dual-norm")

        points, exact = _body_points(space)
        collected = []
        method = "polar-hull"
        try:
            for x in range(fam.n_arms):
                for h in range(fam.n_hypotheses):
                    image = points @ f_matrix(fam, x, h).T
                    collected.append(polar_vertices(np.vstack([image, -image])))
            lambdas = np.vstack(collected)
        except QhullError as exc:
            logger.warning(f"polar hull failed ({exc}); falling back to a direction grid")
            lambdas, exact, method = _grid_lambdas(fam, space), False, "direction-grid"
        lambdas = _prune_symmetric(_unique_rows(lambdas))
    logger.info(f"W-norm: {lambdas.shape[0]} functionals via {method} ({timer.duration_ms:.1f}ms)")
    return WNorm(lambdas, exact=exact, method=method)
