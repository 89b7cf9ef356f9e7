"""
Sine of an affine subspace relative to a convex body (or to another
subspace), and its estimators.

The sine is an infimum over points p of B outside D of
d(p, D) / d(p, B n D). `sine_bruteforce` samples that ratio and is therefore
an upper estimate; the closed-form and LP estimators below are lower bounds
valid for their particular geometries.
"""

from __future__ import annotations

import numpy as np

from src.errors import (
    DegenerateInputError,
    EmptyIntersectionError,
    EmptySubspaceError,
    SubspaceInBodyError,
)
from src.geometry.affine import AffineSubspace
from src.geometry.bodies import ConvexBody
from src.geometry.distances import dist_point_to_affine
from src.geometry.norms import NormSpec
from src.geometry.sections import BodySection
from src.logger.logging_config import get_logger
from src.numkit import LPBuilder, kernel_basis, make_rng, row_space_basis
from src.numkit.tolerances import get_tolerance

logger = get_logger(__name__)

SINE_CONFIG = {
    "samples": 20_000,
    # overshoot past the exit point, as a log-uniform fraction of the exit distance
    "overshoot_min": 1e-3,
    "overshoot_max": 1.0,
}


def _column_space(m) -> np.ndarray:
    arr = np.asarray(m, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.size == 0:
        return np.zeros((arr.shape[0], 0))
    return row_space_basis(arr.T)


def _directions(space) -> np.ndarray:
    if isinstance(space, AffineSubspace):
        return space.basis
    return _column_space(space)


def sine_bruteforce(
    b: AffineSubspace,
    d: ConvexBody | AffineSubspace,
    n: NormSpec,
    samples: int | None = None,
    seed: int = 0,
) -> float:
    """
    Sampled upper estimate of sin(B, D).

    For a convex body, points are taken along random rays in B from a
    relative-interior point of B n D, just past the exit point. For an
    affine D, points are random points of B.

    Parameters:
        b (AffineSubspace): The subspace; for bodies it must lie in mu^-1(1).
        d (ConvexBody | AffineSubspace): Body or second subspace.
        n (NormSpec): Norm on the direction space.
        samples (int | None): Sample count, SINE_CONFIG["samples"] by default.
        seed (int): Seed of the sampling stream.

    Returns:
        float: The smallest sampled ratio.

    Raises:
        SubspaceInBodyError: If B is contained in D.
        DegenerateInputError: If no sampled point of B leaves D.
        EmptyIntersectionError: If B misses D.
    """
    rng = make_rng(seed)
    count = int(samples or SINE_CONFIG["samples"])
    if b.dim == 0:
        if d.contains(b.point):
            raise SubspaceInBodyError("the single point of B lies in D")
        raise EmptyIntersectionError("the single point of B misses D")

    if isinstance(d, AffineSubspace):
        try:
            meet = b.intersect(d.a, d.b)
        except EmptySubspaceError as exc:
            raise EmptyIntersectionError(str(exc)) from exc
        if meet.dim == b.dim:
            raise SubspaceInBodyError("B is contained in D")
        best = np.inf
        for _ in range(count):
            p = meet.point + b.basis @ rng.standard_normal(b.dim)
            far = dist_point_to_affine(n, p, meet)
            if far <= get_tolerance("tol_feas"):
                continue
            best = min(best, dist_point_to_affine(n, p, d) / far)
        return float(best)

    section = BodySection.from_subspace(d, b)
    center = section.interior_point()
    lo, hi = np.log10(SINE_CONFIG["overshoot_min"]), np.log10(SINE_CONFIG["overshoot_max"])
    best = np.inf
    for _ in range(count):
        direction = b.basis @ rng.standard_normal(b.dim)
        direction /= np.linalg.norm(direction)
        exit_at = d.ray_exit(center, direction)
        if not np.isfinite(exit_at):
            continue
        reach = max(exit_at, 1e-12)
        p = center + (exit_at + reach * 10.0 ** rng.uniform(lo, hi)) * direction
        far = section.distance(n, p)
        if far <= get_tolerance("tol_feas"):
            continue
        best = min(best, d.distance(n, p) / far)
    if not np.isfinite(best):
        raise DegenerateInputError("no sampled point left the body")
    logger.debug(f"bruteforce sine {best:.6g} over {count} samples")
    return float(best)


def sine_principal_angles(b, c) -> float:
    """
    Euclidean sine of the first non-vanishing principal angle between two
    linear subspaces (given as AffineSubspace or as spanning columns).

    Both are restricted to the orthogonal complement of their intersection;
    the sine is sqrt(1 - s^2) for the largest singular value s of the cross
    Gram matrix of the restricted bases.

    Raises:
        SubspaceInBodyError: If B is contained in C.
        DegenerateInputError: If B is the zero subspace.
    """
    qb, qc = _column_space(_directions(b)), _column_space(_directions(c))
    dim = qb.shape[0]
    if qb.shape[1] == 0:
        raise DegenerateInputError("B is the zero subspace")
    if qc.shape[1]:
        coeffs = kernel_basis(np.hstack([qb, -qc]))
        common = _column_space(qb @ coeffs[: qb.shape[1]]) if coeffs.shape[1] else np.zeros((dim, 0))
    else:
        common = np.zeros((dim, 0))
    complement = np.eye(dim) - common @ common.T
    x = _column_space(complement @ qb)
    if x.shape[1] == 0:
        raise SubspaceInBodyError("B is contained in C")
    y = _column_space(complement @ qc) if qc.shape[1] else np.zeros((dim, 0))
    if y.shape[1] == 0:
        return 1.0
    top = float(np.linalg.svd(x.T @ y, compute_uv=False)[0])
    return float(np.sqrt(max(0.0, 1.0 - min(top, 1.0) ** 2)))


def sine_simplex_lb(constraints, support=None) -> float:
    """
    Lower bound max_{y in U n simplex} min_{i in E} y_i, for U = ker(constraints).

    Parameters:
        constraints (array_like): Rows whose kernel is U, one column per label.
        support (Iterable[int] | None): Labels E with U inside R^E. When
            omitted, E is the support of U n simplex if U vanishes outside
            it, else every label.

    Returns:
        float: The bound, in [0, 1].

    Raises:
        EmptyIntersectionError: If U misses the simplex.
    """
    m = np.asarray(constraints, dtype=float)
    if m.ndim == 1:
        m = m.reshape(1, -1)
    k = m.shape[1]
    if support is None:
        labels = _support_labels(m)
    else:
        labels = sorted(int(i) for i in support)

    lp = LPBuilder()
    lp.add_variables("y", k)
    lp.add_variables("t", 1, lower=-np.inf)
    lp.add_eq({"y": np.ones((1, k))}, [1.0])
    if m.shape[0]:
        lp.add_eq({"y": m}, np.zeros(m.shape[0]))
    pick = np.eye(k)[labels]
    lp.add_ub({"y": -pick, "t": np.ones((len(labels), 1))}, np.zeros(len(labels)))
    lp.set_objective({"t": [1.0]}, maximize=True)
    solution, _ = lp.solve()
    if not solution.optimal:
        raise EmptyIntersectionError("the subspace misses the simplex")
    return float(np.clip(solution.value, 0.0, 1.0))


def _support_labels(m: np.ndarray) -> list[int]:
    k = m.shape[1]
    tol = get_tolerance("tol_feas")
    reach = []
    for i in range(k):
        lp = LPBuilder()
        lp.add_variables("y", k)
        lp.add_eq({"y": np.ones((1, k))}, [1.0])
        if m.shape[0]:
            lp.add_eq({"y": m}, np.zeros(m.shape[0]))
        lp.set_objective({"y": np.eye(k)[i]}, maximize=True)
        solution, _ = lp.solve()
        if not solution.optimal:
            raise EmptyIntersectionError("the subspace misses the simplex")
        reach.append(solution.value > tol)
    labels = [i for i in range(k) if reach[i]]
    basis = kernel_basis(m) if m.shape[0] else np.eye(k)
    outside = [i for i in range(k) if not reach[i]]
    if outside and np.max(np.abs(basis[outside]), initial=0.0) > tol:
        return list(range(k))
    return labels


def sine_ball(u: AffineSubspace, radius: float = 1.0) -> float:
    """
    sqrt(1 - rho^2), rho the least Euclidean norm over U in disk coordinates
    (divided by the radius).

    Raises:
        EmptyIntersectionError: If U misses the disk.
    """
    rho = float(np.linalg.norm(u.point)) / radius
    if rho > 1.0 + get_tolerance("tol_feas"):
        raise EmptyIntersectionError(f"subspace at distance {rho:.6g} misses the unit disk")
    return float(np.sqrt(max(0.0, 1.0 - rho * rho)))


def sine_chain(component_sines) -> float:
    """Lower bound for a chain of conditional constraints: the smallest component sine."""
    values = [float(s) for s in component_sines]
    if not values:
        raise ValueError("sine_chain needs at least one component")
    if any(not 0.0 <= s <= 1.0 + 1e-12 for s in values):
        raise ValueError(f"component sines must lie in [0, 1], got {values}")
    return min(values)


def sine_prob_system(family_size: int) -> float:
    """Lower bound 1/|F| when the probabilities of |F| independent events are fixed."""
    if family_size < 1:
        raise ValueError("family_size must be at least 1")
    return 1.0 / family_size
