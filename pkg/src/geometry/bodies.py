"""
Compact convex outcome bodies.

Each body lives in an ambient space Y, spans the hyperplane mu(y) = 1 and
knows its support function, the norm whose unit ball is its absolute convex
hull, and how to optimise a linear functional over a section
{y in body : A y = b}.

Polytopes are handled exactly by LPs over vertex weights. The ball has closed
forms. The cone body used by the lower-s construction falls back to SLSQP.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field

import numpy as np
import scipy.optimize

from src.errors import (
    DimensionMismatchError,
    EmptyIntersectionError,
    EmptySubspaceError,
    NumericalBreakdownError,
    UnsupportedBodyError,
)
from src.geometry.affine import AffineSubspace
from src.geometry.norms import (
    L1Norm,
    L2Norm,
    MaxOfBlocks,
    NormSpec,
    PolytopeHull,
    SumOfBlocks,
    add_norm_bound,
    is_polyhedral,
    l2_weights,
    norm_eval,
)
from src.logger.logging_config import get_logger
from src.numkit import LPBuilder, make_rng
from src.numkit.tolerances import get_tolerance

logger = get_logger(__name__)

BODY_CONFIG: dict[str, int] = {
    # boundary points used when a smooth body is discretised
    "ball_grid": 1024,
    "slsqp_maxiter": 500,
}


def _empty_eq(dim: int) -> tuple[np.ndarray, np.ndarray]:
    return np.zeros((0, dim)), np.zeros(0)


def sphere_points(k: int, resolution: int) -> np.ndarray:
    """Deterministic points on the unit sphere of R^k."""
    if k == 1:
        return np.array([[1.0], [-1.0]])
    if k == 2:
        angles = 2 * np.pi * np.arange(resolution) / resolution
        return np.column_stack([np.cos(angles), np.sin(angles)])
    g = make_rng(0).standard_normal((resolution, k))
    pts = g / np.linalg.norm(g, axis=1, keepdims=True)
    return np.vstack([np.eye(k), -np.eye(k), pts])


def _slsqp(fun, jac, x0, constraints, label: str) -> np.ndarray:
    result = scipy.optimize.minimize(
        fun,
        x0,
        jac=jac,
        method="SLSQP",
        constraints=constraints,
        options={"ftol": 1e-13, "maxiter": BODY_CONFIG["slsqp_maxiter"]},
    )
    if not result.success:
        logger.warning(f"SLSQP did not converge in {label}: {result.message}")
    return np.asarray(result.x, dtype=float)


class ConvexBody(ABC):
    """A compact convex body whose affine hull is mu^-1(1)."""

    dim: int
    mu: np.ndarray
    is_polytope: bool = False

    @abstractmethod
    def support(self, c) -> float:
        """max c.y over the body."""

    @abstractmethod
    def argmax(self, c) -> np.ndarray:
        """A maximiser of c.y over the body."""

    @abstractmethod
    def contains(self, y, tol: float | None = None) -> bool: ...

    @abstractmethod
    def extreme_points(self, resolution: int | None = None) -> np.ndarray:
        """Extreme points (exact for polytopes, a boundary grid otherwise)."""

    @abstractmethod
    def induced_norm(self) -> NormSpec:
        """The norm whose unit ball is the absolute convex hull of the body."""

    @abstractmethod
    def center(self) -> np.ndarray:
        """A point in the relative interior."""

    @abstractmethod
    def ray_exit(self, p, d) -> float:
        """max s >= 0 with p + s d in the body, for p in the body."""

    @abstractmethod
    def section_optimize(self, a_eq, b_eq, c, maximize: bool) -> tuple[float, np.ndarray]:
        """
        Optimise c.y over {y in body : a_eq y = b_eq}.

        Raises:
            EmptyIntersectionError: If the section is empty.
        """

    @abstractmethod
    def section_distance(self, n: NormSpec, p, a_eq, b_eq) -> float:
        """min ||p - q|| over q in the section."""

    def dual_norm(self, c) -> float:
        """||c||_{Y*} = max(h(c), h(-c)) for the induced norm."""
        vec = np.asarray(c, dtype=float)
        return max(self.support(vec), self.support(-vec))

    def distance(self, n: NormSpec, p) -> float:
        return self.section_distance(n, p, *_empty_eq(self.dim))

    def _check(self, v) -> np.ndarray:
        vec = np.asarray(v, dtype=float).reshape(-1)
        if vec.shape[0] != self.dim:
            raise DimensionMismatchError(f"expected length {self.dim}, got {vec.shape[0]}")
        return vec


@dataclass(eq=False)
class Polytope(ConvexBody):
    """Convex hull of vertex rows."""

    vertices: np.ndarray = field(repr=False)
    labels: tuple[str, ...] | None = None
    kind: str = "polytope"

    is_polytope = True

    def __post_init__(self):
        self.vertices = np.atleast_2d(np.asarray(self.vertices, dtype=float))
        self.dim = self.vertices.shape[1]
        self.mu = self._fit_mu()

    def _fit_mu(self) -> np.ndarray:
        mu, *_ = np.linalg.lstsq(self.vertices, np.ones(self.vertices.shape[0]), rcond=None)
        if np.max(np.abs(self.vertices @ mu - 1.0)) > 1e-7:
            raise ValueError("polytope vertices do not lie on a hyperplane mu(y) = 1")
        return mu

    @property
    def is_simplex(self) -> bool:
        v = self.vertices
        return v.shape[0] == v.shape[1] and np.array_equal(v, np.eye(v.shape[0]))

    def support(self, c) -> float:
        return float(np.max(self.vertices @ self._check(c)))

    def argmax(self, c) -> np.ndarray:
        return self.vertices[int(np.argmax(self.vertices @ self._check(c)))].copy()

    def _vertex_lp(self, a_eq, b_eq) -> LPBuilder:
        k = self.vertices.shape[0]
        lp = LPBuilder()
        lp.add_variables("zeta", k)
        lp.add_eq({"zeta": np.ones((1, k))}, [1.0])
        a_eq = np.asarray(a_eq, dtype=float).reshape(-1, self.dim)
        if a_eq.shape[0]:
            lp.add_eq({"zeta": a_eq @ self.vertices.T}, b_eq)
        return lp

    def contains(self, y, tol: float | None = None) -> bool:
        vec = self._check(y)
        tol = get_tolerance("tol_feas") if tol is None else tol
        if self.is_simplex:
            return bool(np.all(vec >= -tol) and abs(vec.sum() - 1.0) <= tol)
        return self.section_distance(L1Norm(), vec, *_empty_eq(self.dim)) <= tol * max(
            1.0, float(np.max(np.abs(vec)))
        )

    def extreme_points(self, resolution: int | None = None) -> np.ndarray:
        return self.vertices.copy()

    def induced_norm(self) -> NormSpec:
        return L1Norm() if self.is_simplex else PolytopeHull(self.vertices)

    def center(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    def ray_exit(self, p, d) -> float:
        lp = self._vertex_lp(*_empty_eq(self.dim))
        lp.add_variables("s", 1)
        lp.add_eq({"zeta": self.vertices.T, "s": -self._check(d).reshape(-1, 1)}, self._check(p))
        lp.set_objective({"s": [1.0]}, maximize=True)
        solution, parts = lp.solve()
        if not solution.optimal:
            raise NumericalBreakdownError(f"ray exit LP ended {solution.status.value}")
        return float(parts["s"][0])

    def section_optimize(self, a_eq, b_eq, c, maximize: bool) -> tuple[float, np.ndarray]:
        lp = self._vertex_lp(a_eq, b_eq)
        lp.set_objective({"zeta": self.vertices @ self._check(c)}, maximize=maximize)
        solution, parts = lp.solve()
        if not solution.optimal:
            raise EmptyIntersectionError("section of the polytope is empty")
        return solution.value, self.vertices.T @ parts["zeta"]

    def section_weights(self, a_eq, b_eq, c, maximize: bool) -> np.ndarray:
        """Vertex weights of an optimal point (used for vertex sampling)."""
        lp = self._vertex_lp(a_eq, b_eq)
        lp.set_objective({"zeta": self.vertices @ self._check(c)}, maximize=maximize)
        solution, parts = lp.solve()
        if not solution.optimal:
            raise EmptyIntersectionError("section of the polytope is empty")
        return np.clip(parts["zeta"], 0.0, None)

    def section_distance(self, n: NormSpec, p, a_eq, b_eq) -> float:
        point = self._check(p)
        if is_polyhedral(n):
            if self.is_simplex and isinstance(n, L1Norm) and np.asarray(a_eq).size == 0:
                if abs(point.sum() - 1.0) <= get_tolerance("tol_feas"):
                    return max(0.0, float(np.sum(np.abs(point))) - 1.0)
            lp = self._vertex_lp(a_eq, b_eq)
            lp.add_variables("t", 1)
            add_norm_bound(lp, n, {"zeta": -self.vertices.T}, point, "t")
            lp.set_objective({"t": [1.0]})
            solution, _ = lp.solve()
            if not solution.optimal:
                raise EmptyIntersectionError("section of the polytope is empty")
            return max(0.0, solution.value)
        if isinstance(n, L2Norm):
            q = self.project(n, point, a_eq, b_eq)
            return norm_eval(n, point - q)
        raise UnsupportedBodyError(f"no distance routine for {type(n).__name__} on a polytope")

    def project(self, n: L2Norm, p, a_eq, b_eq) -> np.ndarray:
        """Weighted-Euclidean projection onto a section, by SLSQP over vertex weights."""
        point = self._check(p)
        w = l2_weights(n, self.dim)
        verts = self.vertices
        a_eq = np.asarray(a_eq, dtype=float).reshape(-1, self.dim)
        b_eq = np.asarray(b_eq, dtype=float).reshape(-1)
        k = verts.shape[0]

        def fun(z):
            r = verts.T @ z - point
            return float(np.sum(w * r * r))

        def jac(z):
            return 2.0 * verts @ (w * (verts.T @ z - point))

        constraints = [
            {"type": "eq", "fun": lambda z: np.array([z.sum() - 1.0]),
             "jac": lambda z: np.ones((1, k))},
            {"type": "ineq", "fun": lambda z: z, "jac": lambda z: np.eye(k)},
        ]
        if a_eq.shape[0]:
            m = a_eq @ verts.T
            constraints.append({"type": "eq", "fun": lambda z: m @ z - b_eq, "jac": lambda z: m})
        start = self.section_weights(a_eq, b_eq, np.zeros(self.dim), maximize=False)
        z = _slsqp(fun, jac, start, constraints, "polytope projection")
        return verts.T @ np.clip(z, 0.0, None)


def Segment(a, b) -> Polytope:
    return Polytope(np.vstack([np.asarray(a, dtype=float), np.asarray(b, dtype=float)]),
                    kind="segment")


def SimplexOfLabels(labels) -> Polytope:
    names = tuple(str(x) for x in labels)
    return Polytope(np.eye(len(names)), labels=names, kind="simplex")


@dataclass(eq=False)
class Ball(ConvexBody):
    """
    {(u, 1) : ||u||_2 <= radius} in R^{k+1}; mu is the last coordinate.

    The induced norm is max(||u||_2 / radius, |y_k|).
    """

    k: int
    radius: float = 1.0

    def __post_init__(self):
        self.dim = self.k + 1
        self.mu = np.zeros(self.dim)
        self.mu[-1] = 1.0

    def support(self, c) -> float:
        vec = self._check(c)
        return float(vec[-1] + self.radius * np.linalg.norm(vec[:-1]))

    def argmax(self, c) -> np.ndarray:
        vec = self._check(c)
        y = self.center()
        norm = np.linalg.norm(vec[:-1])
        if norm > 0:
            y[:-1] = self.radius * vec[:-1] / norm
        return y

    def contains(self, y, tol: float | None = None) -> bool:
        vec = self._check(y)
        tol = get_tolerance("tol_feas") if tol is None else tol
        return bool(abs(vec[-1] - 1.0) <= tol and np.linalg.norm(vec[:-1]) <= self.radius + tol)

    def extreme_points(self, resolution: int | None = None) -> np.ndarray:
        pts = self.radius * sphere_points(self.k, resolution or BODY_CONFIG["ball_grid"])
        return np.column_stack([pts, np.ones(pts.shape[0])])

    def induced_norm(self) -> NormSpec:
        return MaxOfBlocks((
            (tuple(range(self.k)), L2Norm(tuple([1.0 / self.radius**2] * self.k))),
            ((self.k,), L1Norm()),
        ))

    def center(self) -> np.ndarray:
        y = np.zeros(self.dim)
        y[-1] = 1.0
        return y

    def ray_exit(self, p, d) -> float:
        u, v = self._check(p)[:-1], self._check(d)[:-1]
        a, b, c = v @ v, 2 * u @ v, u @ u - self.radius**2
        if a == 0.0:
            return float("inf")
        return float((-b + np.sqrt(max(b * b - 4 * a * c, 0.0))) / (2 * a))

    def plane_section(self, a_eq, b_eq) -> tuple[np.ndarray, np.ndarray, float]:
        """
        Section in disk coordinates: (center u0, orthonormal basis K, radius).

        Raises:
            EmptyIntersectionError: If the equations miss the disk.
        """
        a_eq = np.asarray(a_eq, dtype=float).reshape(-1, self.dim)
        b_eq = np.asarray(b_eq, dtype=float).reshape(-1)
        try:
            plane = AffineSubspace.from_equations(a_eq[:, :-1], b_eq - a_eq[:, -1])
        except EmptySubspaceError as exc:
            raise EmptyIntersectionError(str(exc)) from exc
        rho = float(np.linalg.norm(plane.point))
        if rho > self.radius + get_tolerance("tol_feas"):
            raise EmptyIntersectionError(f"section misses the ball (distance {rho:.6g})")
        return plane.point, plane.basis, float(np.sqrt(max(self.radius**2 - rho**2, 0.0)))

    def section_optimize(self, a_eq, b_eq, c, maximize: bool) -> tuple[float, np.ndarray]:
        vec = self._check(c)
        u0, basis, r = self.plane_section(a_eq, b_eq)
        direction = basis @ (basis.T @ vec[:-1])
        norm = np.linalg.norm(direction)
        u = u0.copy()
        if norm > 0:
            u = u0 + (r if maximize else -r) * direction / norm
        y = np.append(u, 1.0)
        return float(vec @ y), y

    def _disk_scale(self, n: NormSpec) -> float:
        """Factor with ||(u, 0)|| = factor * ||u||_2, or raise."""
        if isinstance(n, L2Norm):
            w = l2_weights(n, self.dim)[:-1]
            if np.allclose(w, w[0]):
                return float(np.sqrt(w[0]))
        if isinstance(n, MaxOfBlocks) and n == self.induced_norm():
            return 1.0 / self.radius
        raise UnsupportedBodyError(f"no closed-form ball distance for {type(n).__name__}")

    def section_distance(self, n: NormSpec, p, a_eq, b_eq) -> float:
        point = self._check(p)
        scale = self._disk_scale(n)
        u0, basis, r = self.plane_section(a_eq, b_eq)
        offset = point[:-1] - u0
        along = basis.T @ offset
        across = offset - basis @ along
        radial = max(0.0, float(np.linalg.norm(along)) - r)
        gap = np.hypot(float(np.linalg.norm(across)), radial)
        return scale * float(gap)


@dataclass(eq=False)
class ConeBall(ConvexBody):
    """
    {y in R^{D+2} : y0 >= 0, y1 >= ||y_{2:}||_2, y0 + y1 = 1}.

    A right cone with apex e0 over the unit disk {(0, 1, w) : ||w|| <= 1};
    mu = y0 + y1. Points are parametrised as (1 - s, s, w) with ||w|| <= s <= 1.
    """

    D: int

    def __post_init__(self):
        self.dim = self.D + 2
        self.mu = np.zeros(self.dim)
        self.mu[:2] = 1.0

    def support(self, c) -> float:
        vec = self._check(c)
        return float(vec[0] + max(0.0, vec[1] - vec[0] + np.linalg.norm(vec[2:])))

    def argmax(self, c) -> np.ndarray:
        vec = self._check(c)
        tail = np.linalg.norm(vec[2:])
        if vec[1] - vec[0] + tail <= 0:
            return self.apex()
        y = np.zeros(self.dim)
        y[1] = 1.0
        if tail > 0:
            y[2:] = vec[2:] / tail
        return y

    def apex(self) -> np.ndarray:
        y = np.zeros(self.dim)
        y[0] = 1.0
        return y

    def contains(self, y, tol: float | None = None) -> bool:
        vec = self._check(y)
        tol = get_tolerance("tol_feas") if tol is None else tol
        return bool(
            vec[0] >= -tol
            and abs(vec[0] + vec[1] - 1.0) <= tol
            and np.linalg.norm(vec[2:]) <= vec[1] + tol
        )

    def extreme_points(self, resolution: int | None = None) -> np.ndarray:
        rim = sphere_points(self.D, resolution or BODY_CONFIG["ball_grid"])
        base = np.column_stack([np.zeros(rim.shape[0]), np.ones(rim.shape[0]), rim])
        return np.vstack([self.apex(), base])

    def induced_norm(self) -> NormSpec:
        tail = tuple(range(1, self.D + 1))
        return SumOfBlocks((
            ((0,), L1Norm()),
            (tuple(range(1, self.dim)), MaxOfBlocks((((0,), L1Norm()), (tail, L2Norm()))),),
        ))

    def center(self) -> np.ndarray:
        y = np.zeros(self.dim)
        y[0], y[1] = 0.5, 0.5
        return y

    def ray_exit(self, p, d) -> float:
        point, direction = self._check(p), self._check(d)

        def slack(s: float) -> float:
            y = point + s * direction
            return min(y[0], y[1] - float(np.linalg.norm(y[2:])))

        hi = 1.0
        while slack(hi) >= 0:
            hi *= 2.0
            if hi > 1e12:
                return float("inf")
        return float(scipy.optimize.brentq(slack, 0.0, hi, xtol=1e-14))

    def _param_system(self, a_eq, b_eq) -> tuple[np.ndarray, np.ndarray]:
        """
        The equations in the (s, w) parametrisation, reduced to independent rows.

        The mu row becomes 0 = 0 there and is dropped with every other
        dependent row.

        Raises:
            EmptyIntersectionError: If the reduced system is inconsistent.
        """
        a_eq = np.asarray(a_eq, dtype=float).reshape(-1, self.dim)
        b_eq = np.asarray(b_eq, dtype=float).reshape(-1)
        if not a_eq.shape[0]:
            return np.zeros((0, self.D + 1)), np.zeros(0)
        lin = np.column_stack([a_eq[:, 1] - a_eq[:, 0], a_eq[:, 2:]])
        rhs = b_eq - a_eq[:, 0]
        u, s, vt = np.linalg.svd(lin, full_matrices=False)
        keep = s > get_tolerance("rank_eps") * max(1.0, float(s[0]))
        projected = u[:, keep].T @ rhs
        residual = rhs - u[:, keep] @ projected
        if np.max(np.abs(residual), initial=0.0) > get_tolerance("tol_feas") * max(1.0, float(np.abs(rhs).max())):
            raise EmptyIntersectionError("the section equations are inconsistent on the cone body")
        return s[keep, None] * vt[keep], projected

    def _param_constraints(self, lin: np.ndarray, rhs: np.ndarray) -> list[dict]:
        constraints = [
            {"type": "ineq", "fun": lambda x: np.array([x[0], 1.0 - x[0]]),
             "jac": lambda x: np.vstack([np.eye(1, x.size), -np.eye(1, x.size)])},
            {"type": "ineq", "fun": lambda x: np.array([x[0] ** 2 - x[1:] @ x[1:]]),
             "jac": lambda x: np.concatenate([[2 * x[0]], -2 * x[1:]]).reshape(1, -1)},
        ]
        if lin.shape[0]:
            constraints.append({"type": "eq", "fun": lambda x: lin @ x - rhs, "jac": lambda x: lin})
        return constraints

    @staticmethod
    def _lift(x: np.ndarray) -> np.ndarray:
        return np.concatenate([[1.0 - x[0], x[0]], x[1:]])

    def _section_start(self, lin: np.ndarray, rhs: np.ndarray) -> np.ndarray:
        x0 = np.concatenate([[0.5], np.zeros(self.D)])
        if lin.shape[0]:
            x0 = x0 + np.linalg.pinv(lin) @ (rhs - lin @ x0)
        constraints = self._param_constraints(lin, rhs)
        x = _slsqp(lambda x: 0.0, lambda x: np.zeros_like(x), x0, constraints, "cone section")
        return x

    def section_optimize(self, a_eq, b_eq, c, maximize: bool) -> tuple[float, np.ndarray]:
        vec = self._check(c)
        sign = -1.0 if maximize else 1.0
        grad = sign * np.concatenate([[vec[1] - vec[0]], vec[2:]])
        lin, rhs = self._param_system(a_eq, b_eq)
        constraints = self._param_constraints(lin, rhs)
        x = _slsqp(lambda x: float(grad @ x), lambda x: grad, self._section_start(lin, rhs),
                   constraints, "cone section optimisation")
        y = self._lift(x)
        if not self._on_section(y, a_eq, b_eq):
            raise EmptyIntersectionError("section of the cone body is empty")
        return float(vec @ y), y

    def _on_section(self, y, a_eq, b_eq) -> bool:
        tol = 1e-7
        a_eq = np.asarray(a_eq, dtype=float).reshape(-1, self.dim)
        ok = self.contains(y, tol)
        if a_eq.shape[0]:
            ok = ok and bool(np.max(np.abs(a_eq @ y - np.asarray(b_eq).reshape(-1))) <= tol)
        return ok

    def section_distance(self, n: NormSpec, p, a_eq, b_eq) -> float:
        if not isinstance(n, L2Norm):
            raise UnsupportedBodyError(
                f"cone-body distances are available for L2 metrics only, not {type(n).__name__}"
            )
        point = self._check(p)
        w = l2_weights(n, self.dim)

        def fun(x):
            r = self._lift(x) - point
            return float(np.sum(w * r * r))

        def jac(x):
            g = 2.0 * w * (self._lift(x) - point)
            return np.concatenate([[g[1] - g[0]], g[2:]])

        lin, rhs = self._param_system(a_eq, b_eq)
        constraints = self._param_constraints(lin, rhs)
        x = _slsqp(fun, jac, self._section_start(lin, rhs), constraints, "cone distance")
        y = self._lift(x)
        if not self._on_section(y, a_eq, b_eq):
            raise EmptyIntersectionError("section of the cone body is empty")
        return norm_eval(n, point - y)


def body_to_dict(body: ConvexBody) -> dict:
    match body:
        case Polytope(kind="simplex"):
            return {"kind": "SimplexOfLabels", "labels": list(body.labels)}
        case Polytope(kind="segment"):
            return {"kind": "Segment", "endpoints": body.vertices.tolist()}
        case Polytope():
            return {"kind": "Polytope", "vertices": body.vertices.tolist()}
        case Ball():
            return {"kind": "Ball", "k": body.k, "radius": body.radius}
        case ConeBall():
            return {"kind": "ConeBall", "D": body.D}
    raise TypeError(f"unknown body kind {type(body).__name__}")


def body_from_dict(data: dict) -> ConvexBody:
    kind = data.get("kind")
    if kind == "SimplexOfLabels":
        return SimplexOfLabels(data["labels"])
    if kind == "Segment":
        a, b = data["endpoints"]
        return Segment(a, b)
    if kind == "Polytope":
        return Polytope(np.asarray(data["vertices"], dtype=float))
    if kind == "Ball":
        return Ball(int(data["k"]), float(data.get("radius", 1.0)))
    if kind == "ConeBall":
        return ConeBall(int(data["D"]))
    raise ValueError(f"unknown body kind {kind!r}")
