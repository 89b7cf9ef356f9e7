"""
The hypothesis-class parameters: R (radius in Z-bar), S (least sine of a
credal section relative to the body) and C (reward range), plus the
closed-form R bounds for hyperplane families.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import QhullError

from src.certificates.wnorm import CERTIFICATE_CONFIG, polar_vertices
from src.certificates.zbar import ZBarSpace, build_zbar
from src.errors import (
    DimensionMismatchError,
    NoApplicableMethodError,
    SubspaceInBodyError,
    UnsupportedBodyError,
)
from src.geometry import (
    AffineSubspace,
    Ball,
    ConeBall,
    L2Norm,
    Polytope,
    sine_ball,
    sine_bruteforce,
    sine_chain,
    sine_principal_angles,
    sine_simplex_lb,
)
from src.logger.logging_config import get_logger
from src.logger.timing import Timer
from src.model import HypothesisFamily, OutcomeSpace, RewardSpec, f_matrix
from src.numkit import kernel_basis

logger = get_logger(__name__)

S_METHODS = ("auto", "simplex_lb", "ball", "chain", "principal_angles", "bruteforce")


def param_R(fam: HypothesisFamily, space: OutcomeSpace, zb: ZBarSpace | None = None) -> float:
    """max over the hypothesis grid of ||theta|| in Z-bar."""
    zb = build_zbar(fam, space) if zb is None else zb
    with Timer("param_R", hypotheses=fam.n_hypotheses):
        values = [zb.norm(zb.embed_theta(h)) for h in range(fam.n_hypotheses)]
    return float(max(values, default=0.0))


def param_C(reward: RewardSpec, space: OutcomeSpace, fam: HypothesisFamily | None = None) -> float:
    """Width of the reward range over arms and outcomes."""
    if fam is not None and fam.n_arms != reward.n_arms:
        raise DimensionMismatchError(f"{reward.n_arms} reward rows for {fam.n_arms} arms")
    return reward.range_width(space)


@dataclass
class SineReport:
    value: float
    methods: dict[str, int] = field(default_factory=dict)
    cells: list[tuple[int, int, str, float]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"value": self.value, "methods": dict(self.methods)}


def _cone_rescaled_norm(body: ConeBall) -> L2Norm:
    # height y0 and the disk coordinates, y1 being dependent on mu^-1(1)
    return L2Norm(tuple([1.0, 0.0] + [1.0] * body.D))


def _cone_sine(f: np.ndarray, body: ConeBall) -> float:
    """
    Sine of a hyperplane section against the cone's base plane, in the
    right-cone metric of unit height and unit base radius.
    """
    if f.shape[0] != 1:
        raise NoApplicableMethodError("the cone sine handles one constraint row")
    row = f[0]
    # (h, w) coordinates with y = (h, 1 - h, w)
    normal = np.concatenate([[row[0] - row[1]], row[2:]])
    section = kernel_basis(normal.reshape(1, -1))
    base = np.vstack([np.zeros((1, body.D)), np.eye(body.D)])
    return sine_principal_angles(section, base)


def _chain_sine(f: np.ndarray, hint: dict) -> float:
    """
    Least component sine of a chain of conditional constraints.

    Each hint component names its rows of F and, per local label, the
    global labels it aggregates. A single row whose nonzero entries take
    at most two values of opposite signs fixes a conditional probability
    and has sine 1; other components use the simplex LP bound.
    """
    values = []
    for component in hint["components"]:
        rows = f[np.asarray(component["rows"], dtype=int)]
        lift = component["lift"]
        local = np.column_stack([rows[:, group[0]] for group in lift])
        if local.shape[0] == 1 and _is_conditional(local[0]):
            values.append(1.0)
        else:
            values.append(sine_simplex_lb(local))
    return sine_chain(values)


def _is_conditional(row: np.ndarray) -> bool:
    scale = max(float(np.max(np.abs(row))), 1e-300)
    levels = np.unique(np.round(row[np.abs(row) > 1e-12 * scale] / scale, 9))
    if levels.size <= 1:
        return True
    return levels.size == 2 and levels[0] < 0 < levels[1]


def _resolve_method(method: str, fam: HypothesisFamily, space: OutcomeSpace) -> str:
    if method not in S_METHODS:
        raise NoApplicableMethodError(f"unknown sine method {method!r}")
    body = space.body
    if method != "auto":
        return method
    if fam.sine_hint and fam.sine_hint.get("method") == "chain":
        return "chain"
    if isinstance(body, Polytope) and body.is_simplex:
        return "simplex_lb"
    if isinstance(body, Ball):
        return "ball"
    if isinstance(body, ConeBall):
        return "principal_angles"
    if isinstance(body, Polytope):
        return "bruteforce"
    raise NoApplicableMethodError(f"no sine estimator for {type(body).__name__}")


def cell_sine(
    fam: HypothesisFamily,
    space: OutcomeSpace,
    x: int,
    h: int,
    method: str,
    samples: int | None = None,
    seed: int = 0,
) -> float:
    """
    sin(K_theta(x)^flat, body) for one grid cell by the named estimator.

    Raises:
        NoApplicableMethodError: If the estimator does not fit the body.
        DegenerateInputError: If sampling finds no point of the flat outside the body.
    """
    body = space.body
    f = f_matrix(fam, x, h)
    match method:
        case "simplex_lb":
            if not (isinstance(body, Polytope) and body.is_simplex):
                raise NoApplicableMethodError("simplex_lb needs a simplex body")
            return sine_simplex_lb(f)
        case "ball":
            if not isinstance(body, Ball):
                raise NoApplicableMethodError("the ball estimator needs a ball body")
            disk = AffineSubspace.from_equations(f[:, :-1], -f[:, -1])
            return sine_ball(disk, body.radius)
        case "chain":
            if not (fam.sine_hint and fam.sine_hint.get("method") == "chain"):
                raise NoApplicableMethodError("the family carries no chain structure")
            return _chain_sine(f, fam.sine_hint)
        case "principal_angles":
            if not isinstance(body, ConeBall):
                raise NoApplicableMethodError("principal angles are used for the cone body")
            return _cone_sine(f, body)
        case "bruteforce":
            norm = _cone_rescaled_norm(body) if isinstance(body, ConeBall) else space.y_norm
            flat = AffineSubspace.from_equations(np.vstack([f, space.mu]), np.append(np.zeros(f.shape[0]), 1.0))
            try:
                return sine_bruteforce(
                    flat, body, norm, samples or CERTIFICATE_CONFIG["sine_samples"], seed
                )
            except UnsupportedBodyError as exc:
                raise NoApplicableMethodError(str(exc)) from exc
            except SubspaceInBodyError:
                return 1.0
    raise NoApplicableMethodError(f"unknown sine method {method!r}")


def param_S(
    fam: HypothesisFamily,
    space: OutcomeSpace,
    method: str = "auto",
    samples: int | None = None,
    seed: int = 0,
) -> SineReport:
    """
    Least sine over the grid, with the estimator used on each cell.

    Parameters:
        fam (HypothesisFamily): The family.
        space (OutcomeSpace): The outcome space.
        method (str): One of S_METHODS; "auto" picks chain structure, then
            the simplex bound, the ball and cone closed forms, and sampling
            for other polytopes.
        samples (int | None): Samples per cell for "bruteforce".
        seed (int): Sampling seed.

    Returns:
        SineReport: The value and the per-cell provenance.

    Raises:
        NoApplicableMethodError: If no estimator applies.
    """
    chosen = _resolve_method(method, fam, space)
    report = SineReport(value=1.0)
    counts: Counter[str] = Counter()
    with Timer("param_S", method=chosen, cells=fam.n_arms * fam.n_hypotheses):
        for x in range(fam.n_arms):
            for h in range(fam.n_hypotheses):
                s = cell_sine(fam, space, x, h, chosen, samples, seed)
                report.cells.append((x, h, chosen, s))
                counts[chosen] += 1
                report.value = min(report.value, s)
    report.methods = dict(counts)
    return report


def _operator_norms(a: np.ndarray, points: np.ndarray) -> tuple[float, float]:
    """
    ||A|| and ||A^-1|| for A: (Z, l2) -> (Y*, dual of y_norm), where the Y
    unit ball is the absolute convex hull of `points`.
    """
    forward = float(np.max(np.linalg.norm(points @ a, axis=1)))
    polar = polar_vertices(np.vstack([points, -points]))
    inverse = float(np.max(np.linalg.norm(np.linalg.solve(a, polar.T), axis=0)))
    return forward, inverse


def hyperplane_r_bound(fam: HypothesisFamily, space: OutcomeSpace, normalized: bool = False) -> float:
    """
    Upper bound on R for one-dimensional W with invertible A_x, where
    (A_x z)(y) = F(x, z, y), using the Euclidean norm on Z.

    The plain bound is (max|theta| / min|theta|) max||A_x|| max||A_x^-1||;
    with `normalized` it is the rescaled form max ||A_x|| ||A_x^-1||.

    Raises:
        NoApplicableMethodError: If W is not one-dimensional or some A_x is singular.
    """
    if fam.dim_w != 1 or fam.dim_z != fam.dim_y:
        raise NoApplicableMethodError("the hyperplane bound needs D_W = 1 and D_Z = D_Y")
    body = space.body
    points = body.vertices if isinstance(body, Polytope) else body.extreme_points(
        CERTIFICATE_CONFIG["ball_grid"]
    )
    forwards, inverses, products = [], [], []
    for x in range(fam.n_arms):
        a = fam.arm_tensor(x)[0].T
        if np.linalg.matrix_rank(a) < a.shape[0]:
            raise NoApplicableMethodError(f"A_x is singular for arm {x}")
        try:
            fwd, inv = _operator_norms(a, points)
        except QhullError as exc:
            raise NoApplicableMethodError(f"degenerate body hull: {exc}") from exc
        forwards.append(fwd)
        inverses.append(inv)
        products.append(fwd * inv)
    if normalized:
        return float(max(products))
    lengths = np.linalg.norm(fam.hypotheses, axis=1)
    return float(lengths.max() / lengths.min() * max(forwards) * max(inverses))


def chain_r_bound(component_radii, depth: int) -> float:
    """R of a chain of per-prefix families is at most 2 * depth * max component R."""
    radii = [float(r) for r in component_radii]
    if not radii:
        raise ValueError("a chain needs at least one component")
    return 2.0 * int(depth) * max(radii)
