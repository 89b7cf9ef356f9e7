"""
Dense two-phase simplex for the small linear programs used throughout the
toolkit (previsions, polyhedral norms, sine lower bounds, game values).

The tableau is dense. Pricing is Dantzig, switching to Bland's rule during
degenerate streaks; the ratio test breaks ties by lowest index, and the
returned point is checked against the constraint residuals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from src.errors import DimensionMismatchError, NumericalBreakdownError
from src.logger.logging_config import get_logger
from src.numkit.tolerances import get_tolerance

logger = get_logger(__name__)

# degenerate pivots tolerated before switching to Bland's rule
DEGENERATE_STREAK = 8


class LPStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


def _as_block(a, b, n: int, label: str) -> tuple[np.ndarray, np.ndarray]:
    if a is None:
        return np.zeros((0, n)), np.zeros(0)
    mat = np.asarray(a, dtype=float)
    if mat.ndim == 1:
        mat = mat.reshape(1, -1)
    rhs = np.asarray(b, dtype=float).reshape(-1)
    if mat.shape[0] == 0:
        return np.zeros((0, n)), np.zeros(0)
    if mat.shape[1] != n:
        raise DimensionMismatchError(
            f"{label} has {mat.shape[1]} columns, objective has length {n}"
        )
    if rhs.shape[0] != mat.shape[0]:
        raise DimensionMismatchError(
            f"{label} has {mat.shape[0]} rows but rhs has length {rhs.shape[0]}"
        )
    if not (np.all(np.isfinite(mat)) and np.all(np.isfinite(rhs))):
        raise ValueError(f"{label} has non-finite entries")
    return mat, rhs


@dataclass(frozen=True)
class LPProblem:
    """
    minimize (or maximize) objective @ x
    subject to a_eq @ x == b_eq, a_ub @ x <= b_ub, x >= lower.

    `lower` defaults to zeros; an entry of -inf marks a free variable.
    """

    objective: np.ndarray
    a_eq: np.ndarray | None = None
    b_eq: np.ndarray | None = None
    a_ub: np.ndarray | None = None
    b_ub: np.ndarray | None = None
    lower: np.ndarray | None = None
    maximize: bool = False

    def __post_init__(self):
        c = np.asarray(self.objective, dtype=float).reshape(-1)
        if not np.all(np.isfinite(c)):
            raise ValueError("objective has non-finite entries")
        n = c.shape[0]
        a_eq, b_eq = _as_block(self.a_eq, self.b_eq, n, "a_eq")
        a_ub, b_ub = _as_block(self.a_ub, self.b_ub, n, "a_ub")
        if self.lower is None:
            lower = np.zeros(n)
        else:
            lower = np.asarray(self.lower, dtype=float).reshape(-1)
            if lower.shape[0] != n:
                raise DimensionMismatchError(
                    f"lower has length {lower.shape[0]}, objective has length {n}"
                )
            if np.any(np.isnan(lower)) or np.any(lower == np.inf):
                raise ValueError("lower bounds must be finite or -inf")
        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "a_eq", a_eq)
        object.__setattr__(self, "b_eq", b_eq)
        object.__setattr__(self, "a_ub", a_ub)
        object.__setattr__(self, "b_ub", b_ub)
        object.__setattr__(self, "lower", lower)

    @property
    def n_vars(self) -> int:
        return self.objective.shape[0]


@dataclass(frozen=True)
class LPSolution:
    status: LPStatus
    point: np.ndarray = field(default_factory=lambda: np.zeros(0))
    value: float = float("nan")
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is LPStatus.OPTIMAL


def _pivot(tab: np.ndarray, row: int, col: int) -> None:
    tab[row] /= tab[row, col]
    factors = tab[:, col].copy()
    factors[row] = 0.0
    tab -= np.outer(factors, tab[row])
    tab[:, col] = 0.0
    tab[row, col] = 1.0


def _run_simplex(tab: np.ndarray, basis: np.ndarray, ncols: int) -> tuple[str, int]:
    """
    Minimize over the tableau in place.

    The last row holds reduced costs and -objective; the last column holds
    the basic values. Only the first `ncols` columns may enter.
    """
    m = tab.shape[0] - 1
    pivot_eps = get_tolerance("pivot_eps")
    cost_scale = max(1.0, float(np.max(np.abs(tab[-1, :ncols]), initial=0.0)))
    opt_eps = 1e-11 * cost_scale
    max_iter = 50 * (m + ncols) + 200

    bland = False
    streak = 0
    for iteration in range(max_iter):
        reduced = tab[-1, :ncols]
        candidates = np.flatnonzero(reduced < -opt_eps)
        if candidates.size == 0:
            return "optimal", iteration
        if not bland:
            candidates = candidates[np.argsort(reduced[candidates], kind="stable")]

        rhs = np.maximum(tab[:m, -1], 0.0)
        entering = leaving = -1
        tiny_only = False
        for col in candidates:
            column = tab[:m, col]
            eligible = column > pivot_eps
            if not eligible.any():
                if np.any(column > 0.0):
                    tiny_only = True
                    continue
                return "unbounded", iteration
            ratios = np.full(m, np.inf)
            ratios[eligible] = rhs[eligible] / column[eligible]
            best = float(ratios.min())
            ties = np.flatnonzero(ratios <= best + 1e-12 * max(1.0, abs(best)))
            leaving = int(ties[np.argmin(basis[ties])])
            entering = int(col)
            break

        if entering < 0:
            if tiny_only and not bland:
                bland = True
                continue
            raise NumericalBreakdownError(
                "no admissible pivot above pivot_eps after Bland fallback"
            )

        degenerate = rhs[leaving] <= pivot_eps
        streak = streak + 1 if degenerate else 0
        bland = streak >= DEGENERATE_STREAK
        _pivot(tab, leaving, entering)
        basis[leaving] = entering

    raise NumericalBreakdownError(f"simplex exceeded {max_iter} iterations")


def lp_solve(p: LPProblem) -> LPSolution:
    """
    Solve a small dense LP with the two-phase simplex method.

    Parameters:
        p (LPProblem): The problem.

    Returns:
        LPSolution: status, optimal point and value. For non-optimal statuses
            the point is empty and the value is the corresponding infinity
            (infeasible: +inf when minimizing; unbounded: -inf when minimizing).

    Raises:
        DimensionMismatchError: Raised by LPProblem construction.
        NumericalBreakdownError: On pivot failure, iteration cap, or a
            returned point that violates the constraints beyond tol_feas.
    """
    n = p.n_vars
    sign = -1.0 if p.maximize else 1.0
    lower = p.lower
    free = ~np.isfinite(lower)
    shift = np.where(free, 0.0, lower)
    free_idx = np.flatnonzero(free)
    n_std = n + free_idx.size

    def split(a: np.ndarray) -> np.ndarray:
        return np.hstack([a, -a[:, free_idx]])

    a_eq = split(p.a_eq)
    b_eq = p.b_eq - p.a_eq @ shift
    a_ub = split(p.a_ub)
    b_ub = p.b_ub - p.a_ub @ shift
    m_eq, m_ub = a_eq.shape[0], a_ub.shape[0]
    m = m_eq + m_ub
    ncols = n_std + m_ub

    a_std = np.zeros((m, ncols))
    a_std[:m_eq, :n_std] = a_eq
    a_std[m_eq:, :n_std] = a_ub
    a_std[m_eq:, n_std:] = np.eye(m_ub)
    b_std = np.concatenate([b_eq, b_ub])
    c_std = np.zeros(ncols)
    c_std[:n] = sign * p.objective
    c_std[n:n_std] = -sign * p.objective[free_idx]

    negate = b_std < 0
    a_std[negate] *= -1.0
    b_std[negate] *= -1.0

    # slack columns of non-negated inequality rows start basic
    basis = np.full(m, -1, dtype=int)
    for k in range(m_ub):
        row = m_eq + k
        if not negate[row]:
            basis[row] = n_std + k
    art_rows = np.flatnonzero(basis < 0)
    n_art = art_rows.size

    tab = np.zeros((m + 1, ncols + n_art + 1))
    tab[:m, :ncols] = a_std
    tab[:m, -1] = b_std
    for k, row in enumerate(art_rows):
        tab[row, ncols + k] = 1.0
        basis[row] = ncols + k

    iterations = 0
    b_scale = max(1.0, float(np.max(np.abs(b_std), initial=0.0)))
    if n_art:
        cost = np.zeros(ncols + n_art)
        cost[ncols:] = 1.0
        tab[-1, :-1] = cost - tab[art_rows, :-1].sum(axis=0)
        tab[-1, -1] = -tab[art_rows, -1].sum()
        _, it = _run_simplex(tab, basis, ncols + n_art)
        iterations += it
        if -tab[-1, -1] > get_tolerance("tol_feas") * b_scale:
            return LPSolution(
                LPStatus.INFEASIBLE,
                value=float("-inf") if p.maximize else float("inf"),
                iterations=iterations,
            )
        keep = np.ones(m, dtype=bool)
        for row in range(m):
            if basis[row] >= ncols:
                weights = np.abs(tab[row, :ncols])
                col = int(np.argmax(weights)) if ncols else -1
                if col >= 0 and weights[col] > get_tolerance("pivot_eps"):
                    _pivot(tab, row, col)
                    basis[row] = col
                else:
                    keep[row] = False
        rows = np.concatenate([np.flatnonzero(keep), [m]])
        tab = np.hstack([tab[rows][:, :ncols], tab[rows][:, -1:]])
        basis = basis[keep]
        m = basis.size

    tab[-1, :ncols] = c_std - c_std[basis] @ tab[:m, :ncols]
    tab[-1, -1] = -c_std[basis] @ tab[:m, -1]
    status, it = _run_simplex(tab, basis, ncols)
    iterations += it
    if status == "unbounded":
        return LPSolution(
            LPStatus.UNBOUNDED,
            value=float("inf") if p.maximize else float("-inf"),
            iterations=iterations,
        )

    x_std = np.zeros(ncols)
    x_std[basis] = tab[:m, -1]
    x_std = np.maximum(x_std, 0.0)
    x = x_std[:n] + shift
    x[free_idx] -= x_std[n:n_std]

    _check_residual(p, x)
    return LPSolution(
        LPStatus.OPTIMAL, point=x, value=float(p.objective @ x), iterations=iterations
    )


def _check_residual(p: LPProblem, x: np.ndarray) -> None:
    tol = get_tolerance("tol_feas")
    x_scale = max(1.0, float(np.max(np.abs(x), initial=0.0)))
    if p.a_eq.shape[0]:
        scale = max(1.0, float(np.max(np.abs(p.a_eq)))) * x_scale
        worst = float(np.max(np.abs(p.a_eq @ x - p.b_eq)))
        if worst > tol * scale:
            raise NumericalBreakdownError(f"equality residual {worst:.3e} after simplex")
    if p.a_ub.shape[0]:
        scale = max(1.0, float(np.max(np.abs(p.a_ub)))) * x_scale
        worst = float(np.max(p.a_ub @ x - p.b_ub))
        if worst > tol * scale:
            raise NumericalBreakdownError(f"inequality violation {worst:.3e} after simplex")


class LPBuilder:
    """
    Assemble an LPProblem from named variable blocks.

    Example:
        lp = LPBuilder()
        lp.add_variables("y", 3)
        lp.add_variables("t", 1, lower=-np.inf)
        lp.add_eq({"y": np.ones((1, 3))}, [1.0])
        lp.add_ub({"y": -np.eye(3), "t": np.ones((3, 1))}, np.zeros(3))
        lp.set_objective({"t": [1.0]}, maximize=True)
        solution, parts = lp.solve()
    """

    def __init__(self):
        self._blocks: dict[str, slice] = {}
        self._lower: list[np.ndarray] = []
        self._eq: list[tuple[dict, np.ndarray]] = []
        self._ub: list[tuple[dict, np.ndarray]] = []
        self._objective: dict[str, np.ndarray] = {}
        self._maximize = False

    @property
    def n_vars(self) -> int:
        return sum(s.stop - s.start for s in self._blocks.values())

    def add_variables(self, name: str, count: int, lower: float | np.ndarray = 0.0) -> slice:
        if name in self._blocks:
            raise ValueError(f"variable block {name!r} already exists")
        start = self.n_vars
        block = slice(start, start + count)
        self._blocks[name] = block
        self._lower.append(np.broadcast_to(np.asarray(lower, dtype=float), (count,)).copy())
        return block

    def _row_block(self, coeffs: dict, rows: int) -> np.ndarray:
        mat = np.zeros((rows, self.n_vars))
        for name, values in coeffs.items():
            block = self._blocks[name]
            arr = np.asarray(values, dtype=float)
            if arr.ndim == 1:
                arr = arr.reshape(rows, -1)
            mat[:, block] = arr
        return mat

    def add_eq(self, coeffs: dict, rhs) -> None:
        self._eq.append((coeffs, np.atleast_1d(np.asarray(rhs, dtype=float))))

    def add_ub(self, coeffs: dict, rhs) -> None:
        self._ub.append((coeffs, np.atleast_1d(np.asarray(rhs, dtype=float))))

    def set_objective(self, coeffs: dict, maximize: bool = False) -> None:
        self._objective = {k: np.asarray(v, dtype=float).reshape(-1) for k, v in coeffs.items()}
        self._maximize = maximize

    def build(self) -> LPProblem:
        n = self.n_vars
        c = np.zeros(n)
        for name, values in self._objective.items():
            c[self._blocks[name]] = values

        def stack(entries):
            if not entries:
                return None, None
            mats = [self._row_block(coeffs, rhs.shape[0]) for coeffs, rhs in entries]
            return np.vstack(mats), np.concatenate([rhs for _, rhs in entries])

        a_eq, b_eq = stack(self._eq)
        a_ub, b_ub = stack(self._ub)
        lower = np.concatenate(self._lower) if self._lower else np.zeros(0)
        return LPProblem(c, a_eq, b_eq, a_ub, b_ub, lower, self._maximize)

    def solve(self) -> tuple[LPSolution, dict[str, np.ndarray]]:
        """Solve and split the optimal point back into named blocks."""
        solution = lp_solve(self.build())
        if not solution.optimal:
            return solution, {}
        return solution, {name: solution.point[s] for name, s in self._blocks.items()}


def chebyshev_residual(a, b) -> float:
    """
    Value of min_z ||a - B z||_inf.

    Solved through the dual max a.u s.t. B^T u = 0, ||u||_1 <= 1, which has
    only 2 len(a) variables whatever the width of B.

    Parameters:
        a (array_like): Vector of length k.
        b (array_like): Matrix of shape (k, p); p may be 0.

    Returns:
        float: The residual, >= 0.
    """
    vec = np.asarray(a, dtype=float).reshape(-1)
    mat = np.asarray(b, dtype=float).reshape(vec.shape[0], -1)
    if mat.shape[1] == 0 or not np.any(mat):
        return float(np.max(np.abs(vec), initial=0.0))
    k = vec.shape[0]
    lp = LPBuilder()
    lp.add_variables("up", k)
    lp.add_variables("um", k)
    lp.add_eq({"up": mat.T, "um": -mat.T}, np.zeros(mat.shape[1]))
    lp.add_ub({"up": np.ones((1, k)), "um": np.ones((1, k))}, [1.0])
    lp.set_objective({"up": vec, "um": -vec}, maximize=True)
    solution, _ = lp.solve()
    if not solution.optimal:
        raise NumericalBreakdownError(f"Chebyshev dual LP ended {solution.status.value}")
    return max(0.0, solution.value)
