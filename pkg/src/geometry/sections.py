"""Sections {y in body : A y = b} of convex bodies, the geometric form of a credal set."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from src.errors import EmptyIntersectionError
from src.geometry.affine import AffineSubspace
from src.geometry.bodies import Ball, ConvexBody
from src.geometry.norms import NormSpec
from src.numkit.tolerances import get_tolerance


@dataclass(frozen=True, eq=False)
class BodySection:
    body: ConvexBody
    a_eq: np.ndarray = field(repr=False)
    b_eq: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.asarray(self.a_eq, dtype=float).reshape(-1, self.body.dim)
        object.__setattr__(self, "a_eq", a)
        object.__setattr__(self, "b_eq", np.asarray(self.b_eq, dtype=float).reshape(-1))

    @classmethod
    def from_subspace(cls, body: ConvexBody, subspace: AffineSubspace) -> BodySection:
        return cls(body, subspace.a, subspace.b)

    @classmethod
    def kernel(cls, body: ConvexBody, f) -> BodySection:
        """{y in body : f y = 0}."""
        f = np.asarray(f, dtype=float).reshape(-1, body.dim)
        return cls(body, f, np.zeros(f.shape[0]))

    @property
    def dim(self) -> int:
        return self.body.dim

    def optimize(self, c, maximize: bool = False) -> tuple[float, np.ndarray]:
        """
        Optimise c.y over the section.

        Raises:
            EmptyIntersectionError: If the section is empty.
        """
        return self.body.section_optimize(self.a_eq, self.b_eq, c, maximize)

    def support(self, c) -> float:
        return self.optimize(c, maximize=True)[0]

    def point(self) -> np.ndarray:
        return self.optimize(np.zeros(self.dim))[1]

    def is_empty(self) -> bool:
        try:
            self.point()
        except EmptyIntersectionError:
            return True
        return False

    def interior_point(self) -> np.ndarray:
        """A relative-interior point: the mean of the maximisers of +-e_i."""
        if isinstance(self.body, Ball):
            u0, _, _ = self.body.plane_section(self.a_eq, self.b_eq)
            return np.append(u0, 1.0)
        eye = np.eye(self.dim)
        points = [self.optimize(s * eye[i], maximize=True)[1] for i in range(self.dim) for s in (1, -1)]
        return np.mean(points, axis=0)

    def contains(self, y, tol: float | None = None) -> bool:
        tol = get_tolerance("tol_feas") if tol is None else tol
        vec = np.asarray(y, dtype=float).reshape(-1)
        on_plane = self.a_eq.shape[0] == 0 or np.max(np.abs(self.a_eq @ vec - self.b_eq)) <= tol
        return bool(on_plane and self.body.contains(vec, tol))

    def distance(self, n: NormSpec, p) -> float:
        return self.body.section_distance(n, p, self.a_eq, self.b_eq)
