"""Affine subspaces held as an equation system with a cached parametrisation."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from src.errors import DimensionMismatchError, EmptySubspaceError, InconsistentSystemError
from src.numkit import kernel_basis, least_squares_min_norm
from src.numkit.tolerances import get_tolerance


@dataclass(frozen=True, eq=False)
class AffineSubspace:
    """
    {y : a @ y == b}, stored with its Euclidean min-norm point and an
    orthonormal basis of the direction space (one column per direction).
    """

    a: np.ndarray = field(repr=False)
    b: np.ndarray = field(repr=False)
    point: np.ndarray = field(repr=False)
    basis: np.ndarray = field(repr=False)

    @classmethod
    def from_equations(cls, a, b) -> AffineSubspace:
        """
        Raises:
            EmptySubspaceError: If the system is inconsistent.
        """
        mat = np.asarray(a, dtype=float)
        if mat.ndim == 1:
            mat = mat.reshape(1, -1)
        rhs = np.asarray(b, dtype=float).reshape(-1)
        if mat.shape[0] != rhs.shape[0]:
            raise DimensionMismatchError(f"{mat.shape[0]} equations but {rhs.shape[0]} values")
        try:
            point = least_squares_min_norm(mat, rhs)
        except InconsistentSystemError as exc:
            raise EmptySubspaceError(str(exc)) from exc
        return cls(mat, rhs, point, kernel_basis(mat))

    @classmethod
    def from_point_basis(cls, point, directions) -> AffineSubspace:
        p = np.asarray(point, dtype=float).reshape(-1)
        d = np.asarray(directions, dtype=float).reshape(p.shape[0], -1)
        normal = kernel_basis(d.T).T if d.shape[1] else np.eye(p.shape[0])
        return cls.from_equations(normal, normal @ p)

    @classmethod
    def from_points(cls, points) -> AffineSubspace:
        """Affine hull of the rows of `points`."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        return cls.from_point_basis(pts[0], (pts[1:] - pts[0]).T)

    @property
    def ambient_dim(self) -> int:
        return self.a.shape[1]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def contains(self, y, tol: float | None = None) -> bool:
        tol = get_tolerance("tol_feas") if tol is None else tol
        vec = np.asarray(y, dtype=float).reshape(-1)
        if self.a.shape[0] == 0:
            return True
        scale = max(1.0, float(np.max(np.abs(vec))))
        return bool(np.max(np.abs(self.a @ vec - self.b)) <= tol * scale)

    def project_l2(self, y) -> np.ndarray:
        vec = np.asarray(y, dtype=float).reshape(-1)
        return self.point + self.basis @ (self.basis.T @ (vec - self.point))

    def translate(self, v) -> AffineSubspace:
        """The subspace shifted by v."""
        shift = np.asarray(v, dtype=float).reshape(-1)
        return AffineSubspace(self.a, self.b + self.a @ shift, self.point + shift
                              - self.basis @ (self.basis.T @ shift), self.basis)

    def linear_part(self) -> AffineSubspace:
        return AffineSubspace(self.a, np.zeros_like(self.b), np.zeros(self.ambient_dim), self.basis)

    def intersect(self, a, b) -> AffineSubspace:
        mat = np.asarray(a, dtype=float).reshape(-1, self.ambient_dim)
        return AffineSubspace.from_equations(
            np.vstack([self.a, mat]), np.concatenate([self.b, np.asarray(b, dtype=float).reshape(-1)])
        )
