"""
Rewards affine in the outcome, r(x, y) = c(x).y + c0(x), and the convexified
reward of an arbitrary vertex-valued reward on a polytope.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.optimize

from src.errors import DimensionMismatchError, QueryOutsideBodyError, UnsupportedBodyError
from src.geometry import Polytope
from src.model.space import OutcomeSpace
from src.numkit import LPBuilder
from src.numkit.tolerances import get_tolerance


@dataclass(frozen=True, eq=False)
class RewardSpec:
    """Per-arm covector `coef[x]` and offset `offset[x]`."""

    coef: np.ndarray = field(repr=False)
    offset: np.ndarray = field(repr=False)

    def __post_init__(self):
        coef = np.atleast_2d(np.asarray(self.coef, dtype=float))
        offset = np.asarray(self.offset, dtype=float).reshape(-1)
        if offset.shape[0] != coef.shape[0]:
            raise DimensionMismatchError(f"{coef.shape[0]} covectors but {offset.shape[0]} offsets")
        object.__setattr__(self, "coef", coef)
        object.__setattr__(self, "offset", offset)

    @classmethod
    def shared(cls, c, c0: float, n_arms: int) -> RewardSpec:
        """The same reward for every arm."""
        c = np.asarray(c, dtype=float).reshape(1, -1)
        return cls(np.repeat(c, n_arms, axis=0), np.full(n_arms, float(c0)))

    @property
    def n_arms(self) -> int:
        return self.coef.shape[0]

    def value(self, x: int, y) -> float:
        return float(self.coef[int(x)] @ np.asarray(y, dtype=float) + self.offset[int(x)])

    def lipschitz_constant(self, space: OutcomeSpace, x: int) -> float:
        """
        Lipschitz constant of r(x, .) on mu^-1(1) w.r.t. y_norm.

        Differences of outcomes lie in ker mu, so the constant is the dual
        norm of c(x) restricted to ker mu, i.e. min_t ||c(x) + t mu||_{Y*}.
        """
        c, mu = self.coef[int(x)], space.mu
        scale = 1.0 + float(np.max(np.abs(c))) / max(float(np.max(np.abs(mu))), 1e-12)
        result = scipy.optimize.minimize_scalar(
            lambda t: space.body.dual_norm(c + t * mu),
            bounds=(-4.0 * scale, 4.0 * scale),
            method="bounded",
            options={"xatol": 1e-12},
        )
        return float(result.fun)

    def check_lipschitz(self, space: OutcomeSpace) -> bool:
        return all(
            self.lipschitz_constant(space, x) <= 1.0 + 1e-9 for x in range(self.n_arms)
        )

    def range_width(self, space: OutcomeSpace) -> float:
        """max r - min r over arms and the body, from the support function."""
        body = space.body
        highs = [body.support(c) + c0 for c, c0 in zip(self.coef, self.offset)]
        lows = [-body.support(-c) + c0 for c, c0 in zip(self.coef, self.offset)]
        return float(max(highs) - min(lows))

    def to_dict(self) -> dict:
        return {"c": self.coef.tolist(), "c0": self.offset.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> RewardSpec:
        return cls(np.asarray(data["c"], dtype=float), np.asarray(data["c0"], dtype=float))


@dataclass(frozen=True, eq=False)
class ConvexifiedReward:
    """
    r~(x, y): the least mean reward over vertex distributions with mean y.

    `vertex_values[x, v]` is r(x, v) at vertex v of the polytope body.
    """

    body: Polytope
    vertex_values: np.ndarray = field(repr=False)

    def __call__(self, x: int, y) -> float:
        point = np.asarray(y, dtype=float).reshape(-1)
        tol = get_tolerance("tol_feas")
        if not self.body.contains(point, tol=10 * tol):
            raise QueryOutsideBodyError(f"query {point.tolist()} is outside the body")
        verts = self.body.vertices
        k = verts.shape[0]
        lp = LPBuilder()
        lp.add_variables("zeta", k)
        lp.add_eq({"zeta": np.ones((1, k))}, [1.0])
        lp.add_eq({"zeta": verts.T}, point)
        lp.set_objective({"zeta": self.vertex_values[int(x)]})
        solution, _ = lp.solve()
        if not solution.optimal:
            raise QueryOutsideBodyError(f"no vertex distribution has mean {point.tolist()}")
        return float(solution.value)


def convexify_reward(space: OutcomeSpace, vertex_values) -> ConvexifiedReward:
    """
    Build r~ from reward values at the body's vertices.

    Parameters:
        space (OutcomeSpace): A space whose body is a polytope.
        vertex_values (array_like): Shape (n_arms, n_vertices), or one row.

    Raises:
        UnsupportedBodyError: If the body is not a polytope.
    """
    if not isinstance(space.body, Polytope):
        raise UnsupportedBodyError("the convexified reward needs a polytope body")
    values = np.atleast_2d(np.asarray(vertex_values, dtype=float))
    if values.shape[1] != space.body.vertices.shape[0]:
        raise DimensionMismatchError(
            f"{values.shape[1]} vertex values for {space.body.vertices.shape[0]} vertices"
        )
    return ConvexifiedReward(space.body, values)
