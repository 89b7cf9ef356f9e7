"""
The extended hypothesis space Z-bar = (Z + W) / N.

An element v = (z, w) of Z + W acts on outcomes through
F-bar(x, v, y) = F(x, z, y) + mu(y) w. N is the subspace on which that
action vanishes for every arm, and the Z-bar norm is the worst-case
operator norm of F-bar_x^v from Y to W. Because the Y unit ball is the
absolute convex hull of the body, that operator norm is
max over lambda in Lambda of ||(F-bar_x^v)^T lambda||_{Y*}.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from src.certificates.wnorm import WNorm, build_wnorm
from src.geometry import Polytope
from src.logger.logging_config import get_logger
from src.logger.timing import Timer
from src.model import HypothesisFamily, OutcomeSpace
from src.numkit import kernel_basis, row_space_basis

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class ZBarSpace:
    """
    Handles for Z-bar: the null subspace N, a complement basis, the
    W-norm and, for polytope bodies, the rows g with ||v|| = max |g . v|.
    """

    family: HypothesisFamily
    space: OutcomeSpace
    wnorm: WNorm
    null_basis: np.ndarray = field(repr=False)
    complement_basis: np.ndarray = field(repr=False)
    dual_rows: np.ndarray | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        """Dimension of Z + W."""
        return self.family.dim_z + self.family.dim_w

    @property
    def quotient_dim(self) -> int:
        return self.complement_basis.shape[1]

    @property
    def polyhedral(self) -> bool:
        return self.dual_rows is not None

    def embed_theta(self, theta) -> np.ndarray:
        return np.concatenate([self.family.theta(theta), np.zeros(self.family.dim_w)])

    def embed_w(self, w) -> np.ndarray:
        return np.concatenate([np.zeros(self.family.dim_z), np.asarray(w, dtype=float).reshape(-1)])

    def quotient(self, v) -> np.ndarray:
        """Coordinates of the class of v in the complement of N."""
        return self.complement_basis.T @ np.asarray(v, dtype=float)

    def operator(self, x: int, v) -> np.ndarray:
        """F-bar_x^v as a (D_W, D_Y) matrix."""
        vec = np.asarray(v, dtype=float).reshape(-1)
        z, w = vec[: self.family.dim_z], vec[self.family.dim_z :]
        return np.einsum("wij,i->wj", self.family.arm_tensor(x), z) + np.outer(w, self.space.mu)

    def apply(self, x: int, v, y) -> np.ndarray:
        """F-bar(x, v, y)."""
        return self.operator(x, v) @ np.asarray(y, dtype=float)

    def norm(self, v) -> float:
        vec = np.asarray(v, dtype=float).reshape(-1)
        if self.dual_rows is not None:
            return float(np.max(np.abs(self.dual_rows @ vec), initial=0.0))
        return self.norm_with_subgradient(vec)[0]

    def norm_with_subgradient(self, v) -> tuple[float, np.ndarray]:
        """The norm and one subgradient, from the maximising (x, lambda, y)."""
        vec = np.asarray(v, dtype=float).reshape(-1)
        if self.dual_rows is not None:
            values = self.dual_rows @ vec
            k = int(np.argmax(np.abs(values)))
            return float(abs(values[k])), np.sign(values[k]) * self.dual_rows[k]

        body, mu, fam = self.space.body, self.space.mu, self.family
        best, grad = 0.0, np.zeros(self.dim)
        for x in range(fam.n_arms):
            op = self.operator(x, vec)
            tensor = fam.arm_tensor(x)
            for lam in self.wnorm.lambdas:
                c = op.T @ lam
                for sign in (1.0, -1.0):
                    y = body.argmax(sign * c)
                    value = sign * float(c @ y)
                    if value > best:
                        best = value
                        gz = np.einsum("w,wij,j->i", lam, tensor, y)
                        grad = sign * np.concatenate([gz, lam * float(mu @ y)])
        return best, grad

    def kernel_basis(self, x: int, ybar) -> np.ndarray:
        """
        Basis (columns) of V(x, ybar) = {v : F-bar(x, v, ybar) = 0}.
        """
        y = np.asarray(ybar, dtype=float).reshape(-1)
        a = np.einsum("wij,j->wi", self.family.arm_tensor(x), y)
        system = np.hstack([a, float(self.space.mu @ y) * np.eye(self.family.dim_w)])
        return kernel_basis(system)


def _dual_rows(fam: HypothesisFamily, space: OutcomeSpace, wnorm: WNorm) -> np.ndarray:
    verts = space.body.vertices
    mu_v = verts @ space.mu
    blocks = []
    for x in range(fam.n_arms):
        gz = np.einsum("kw,wij,vj->kvi", wnorm.lambdas, fam.arm_tensor(x), verts)
        gw = wnorm.lambdas[:, None, :] * mu_v[None, :, None]
        blocks.append(np.concatenate([gz, gw], axis=2).reshape(-1, fam.dim_z + fam.dim_w))
    rows = np.vstack(blocks)
    # one of each +- pair
    flip = np.sign(rows[np.arange(rows.shape[0]), np.argmax(np.abs(rows) > 1e-15, axis=1)])
    rows = rows * np.where(flip == 0, 1.0, flip)[:, None]
    _, idx = np.unique(np.round(rows, 12), axis=0, return_index=True)
    return rows[np.sort(idx)]


def build_zbar(fam: HypothesisFamily, space: OutcomeSpace, wnorm: WNorm | None = None) -> ZBarSpace:
    """
    Compute N as the kernel of the stacked system
    [T_x[:, :, j], mu_j I] (v) = 0 over arms x and outcome coordinates j.
    """
    with Timer("build_zbar", arms=fam.n_arms, dim_z=fam.dim_z, dim_w=fam.dim_w):
        wnorm = wnorm or build_wnorm(fam, space)
        mu = space.mu
        eye = np.eye(fam.dim_w)
        blocks = [
            np.hstack([fam.arm_tensor(x)[:, :, j], mu[j] * eye])
            for x in range(fam.n_arms)
            for j in range(fam.dim_y)
        ]
        stacked = np.vstack(blocks)
        null = kernel_basis(stacked)
        complement = row_space_basis(stacked)
        rows = _dual_rows(fam, space, wnorm) if isinstance(space.body, Polytope) else None
    logger.info(f"Z-bar: dim N = {null.shape[1]}, quotient dim = {complement.shape[1]}")
    return ZBarSpace(fam, space, wnorm, null, complement, rows)


def zbar_norm(zb: ZBarSpace, v) -> float:
    """||v|| in Z-bar; constant on classes modulo N."""
    return zb.norm(v)
