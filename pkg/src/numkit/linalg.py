"""
Dense linear algebra primitives: numerical rank, null-space bases and
minimum-norm least squares.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from src.errors import DimensionMismatchError, InconsistentSystemError
from src.numkit.tolerances import get_tolerance


def as_finite_matrix(m, name: str = "matrix") -> np.ndarray:
    """Coerce to a 2-D float array, rejecting NaN/Inf."""
    arr = np.atleast_2d(np.asarray(m, dtype=float))
    if arr.ndim != 2:
        raise DimensionMismatchError(f"{name} must be 2-D, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def as_finite_vector(v, name: str = "vector") -> np.ndarray:
    arr = np.asarray(v, dtype=float).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def rank(m) -> int:
    """
    Numerical rank via column-pivoted QR.

    A diagonal entry of R counts when it exceeds rank_eps times the Frobenius
    norm of the matrix.

    Parameters:
        m (array_like): Matrix.

    Returns:
        int: Numerical rank.
    """
    arr = as_finite_matrix(m)
    if arr.size == 0:
        return 0
    scale = np.linalg.norm(arr)
    if scale == 0.0:
        return 0
    r = scipy.linalg.qr(arr, mode="r", pivoting=True)[0]
    diag = np.abs(np.diag(r))
    return int(np.sum(diag > get_tolerance("rank_eps") * scale))


def kernel_basis(m) -> np.ndarray:
    """
    Orthonormal basis of the null space of `m`, one vector per column.

    The column count is always ncols - rank(m); a zero or empty matrix
    yields the identity.

    Parameters:
        m (array_like): Matrix with shape (rows, ncols).

    Returns:
        np.ndarray: Array of shape (ncols, ncols - rank(m)).
    """
    arr = np.asarray(m, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    ncols = arr.shape[1]
    if arr.shape[0] == 0 or not np.any(arr):
        return np.eye(ncols)
    arr = as_finite_matrix(arr)
    r = rank(arr)
    _, _, vt = np.linalg.svd(arr, full_matrices=True)
    return vt[r:].T.copy()


def row_space_basis(m) -> np.ndarray:
    """Orthonormal basis (columns) of the row space of `m`."""
    arr = np.asarray(m, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.shape[0] == 0 or not np.any(arr):
        return np.zeros((arr.shape[1], 0))
    r = rank(arr)
    _, _, vt = np.linalg.svd(arr, full_matrices=True)
    return vt[:r].T.copy()


def least_squares_min_norm(a, b) -> np.ndarray:
    """
    Euclidean minimum-norm solution of a consistent system A y = b.

    Parameters:
        a (array_like): Matrix of shape (m, n).
        b (array_like): Right-hand side of length m.

    Returns:
        np.ndarray: The solution of least 2-norm.

    Raises:
        DimensionMismatchError: If len(b) != rows of A.
        InconsistentSystemError: If the residual exceeds tol_feas.
    """
    arr = as_finite_matrix(a, "A")
    rhs = as_finite_vector(b, "b")
    if arr.shape[0] != rhs.shape[0]:
        raise DimensionMismatchError(
            f"A has {arr.shape[0]} rows but b has length {rhs.shape[0]}"
        )
    if arr.shape[0] == 0:
        return np.zeros(arr.shape[1])
    y, *_ = scipy.linalg.lstsq(arr, rhs, lapack_driver="gelsd")
    residual = float(np.max(np.abs(arr @ y - rhs)))
    scale = max(1.0, float(np.max(np.abs(rhs))))
    if residual > get_tolerance("tol_feas") * scale:
        raise InconsistentSystemError(f"system is inconsistent (residual {residual:.3e})")
    return y
