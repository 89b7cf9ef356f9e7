"""
Norm specifications and their evaluation.

A norm is a small frozen value object. Polyhedral norms (L1, LInf,
PolytopeHull and block combinations of them) can also be written as LP
epigraph constraints, which is how every polyhedral distance and minimum-norm
problem in the toolkit is solved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count

import numpy as np

from src.errors import DimensionMismatchError
from src.numkit import LPBuilder


@dataclass(frozen=True)
class L1Norm:
    pass


@dataclass(frozen=True)
class L2Norm:
    """Euclidean norm, optionally weighted: sqrt(sum w_i v_i^2).

    Zero weights give a seminorm; that is how the rescaled metric of the
    cone scenario ignores the dependent coordinate.
    """

    weights: tuple[float, ...] | None = None


@dataclass(frozen=True)
class LInfNorm:
    pass


@dataclass(frozen=True)
class MaxOfBlocks:
    """max over blocks of the block norm; index sets partition the coordinates."""

    blocks: tuple[tuple[tuple[int, ...], "NormSpec"], ...]


@dataclass(frozen=True)
class SumOfBlocks:
    """Sum over blocks of the block norm; index sets partition the coordinates."""

    blocks: tuple[tuple[tuple[int, ...], "NormSpec"], ...]


@dataclass(frozen=True, eq=False)
class PolytopeHull:
    """Gauge of the absolute convex hull of a vertex list (one vertex per row)."""

    vertices: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.atleast_2d(np.asarray(self.vertices, dtype=float))
        if v.shape[0] == 0:
            raise ValueError("PolytopeHull needs at least one vertex")
        object.__setattr__(self, "vertices", v)


NormSpec = L1Norm | L2Norm | LInfNorm | MaxOfBlocks | SumOfBlocks | PolytopeHull


def _check_blocks(blocks, dim: int) -> None:
    covered = sorted(i for idx, _ in blocks for i in idx)
    if covered != list(range(dim)):
        raise DimensionMismatchError(
            f"block index sets {[idx for idx, _ in blocks]} do not partition {dim} coordinates"
        )


def norm_eval(n: NormSpec, v) -> float:
    """
    Evaluate a norm.

    PolytopeHull is evaluated as min t > 0 with v/t in the absolute convex
    hull, an LP over the signed vertex coefficients.

    Parameters:
        n (NormSpec): The norm.
        v (array_like): Vector.

    Returns:
        float: ||v||, non-negative.

    Raises:
        DimensionMismatchError: If v does not fit the norm.
        ValueError: If v lies outside the span of a PolytopeHull.
    """
    vec = np.asarray(v, dtype=float).reshape(-1)
    match n:
        case L1Norm():
            return float(np.sum(np.abs(vec)))
        case LInfNorm():
            return float(np.max(np.abs(vec), initial=0.0))
        case L2Norm(weights=None):
            return float(np.linalg.norm(vec))
        case L2Norm(weights=w):
            w = np.asarray(w, dtype=float)
            if w.shape[0] != vec.shape[0]:
                raise DimensionMismatchError(f"{w.shape[0]} weights for a vector of {vec.shape[0]}")
            return float(np.sqrt(np.sum(w * vec * vec)))
        case MaxOfBlocks(blocks=blocks):
            _check_blocks(blocks, vec.shape[0])
            return max(norm_eval(sub, vec[list(idx)]) for idx, sub in blocks)
        case SumOfBlocks(blocks=blocks):
            _check_blocks(blocks, vec.shape[0])
            return float(sum(norm_eval(sub, vec[list(idx)]) for idx, sub in blocks))
        case PolytopeHull(vertices=verts):
            if verts.shape[1] != vec.shape[0]:
                raise DimensionMismatchError(
                    f"hull of dimension {verts.shape[1]} evaluated on length {vec.shape[0]}"
                )
            if not np.any(vec):
                return 0.0
            k = verts.shape[0]
            lp = LPBuilder()
            lp.add_variables("ap", k)
            lp.add_variables("am", k)
            lp.add_eq({"ap": verts.T, "am": -verts.T}, vec)
            lp.set_objective({"ap": np.ones(k), "am": np.ones(k)})
            solution, _ = lp.solve()
            if not solution.optimal:
                raise ValueError("vector lies outside the span of the hull vertices")
            return max(0.0, solution.value)
    raise TypeError(f"unknown norm kind {type(n).__name__}")


def is_polyhedral(n: NormSpec) -> bool:
    match n:
        case L1Norm() | LInfNorm() | PolytopeHull():
            return True
        case MaxOfBlocks(blocks=blocks) | SumOfBlocks(blocks=blocks):
            return all(is_polyhedral(sub) for _, sub in blocks)
    return False


def is_euclidean(n: NormSpec) -> bool:
    return isinstance(n, L2Norm)


def l2_weights(n: L2Norm, dim: int) -> np.ndarray:
    if n.weights is None:
        return np.ones(dim)
    w = np.asarray(n.weights, dtype=float)
    if w.shape[0] != dim:
        raise DimensionMismatchError(f"{w.shape[0]} weights for dimension {dim}")
    return w


_aux = count()


def add_norm_bound(
    lp: LPBuilder,
    n: NormSpec,
    expr: dict[str, np.ndarray],
    const: np.ndarray,
    bound: str,
) -> None:
    """
    Add LP constraints enforcing ||expr(x) + const|| <= bound.

    Parameters:
        lp (LPBuilder): Builder to extend.
        n (NormSpec): A polyhedral norm.
        expr (dict[str, np.ndarray]): Block name -> matrix with one row per
            coordinate of the normed vector.
        const (np.ndarray): Constant part of the normed vector.
        bound (str): Name of an existing scalar variable block.
    """
    const = np.asarray(const, dtype=float).reshape(-1)
    dim = const.shape[0]

    def rows(idx):
        return {k: np.asarray(m)[list(idx)] for k, m in expr.items()}

    match n:
        case L1Norm():
            u = f"_l1_{next(_aux)}"
            lp.add_variables(u, dim)
            eye = np.eye(dim)
            lp.add_ub({**expr, u: -eye}, -const)
            lp.add_ub({**{k: -m for k, m in expr.items()}, u: -eye}, const)
            lp.add_ub({u: np.ones((1, dim)), bound: [[-1.0]]}, [0.0])
        case LInfNorm():
            ones = -np.ones((dim, 1))
            lp.add_ub({**expr, bound: ones}, -const)
            lp.add_ub({**{k: -m for k, m in expr.items()}, bound: ones}, const)
        case PolytopeHull(vertices=verts):
            k = verts.shape[0]
            ap, am = f"_hp_{next(_aux)}", f"_hm_{next(_aux)}"
            lp.add_variables(ap, k)
            lp.add_variables(am, k)
            lp.add_eq({**{kk: -m for kk, m in expr.items()}, ap: verts.T, am: -verts.T}, const)
            lp.add_ub({ap: np.ones((1, k)), am: np.ones((1, k)), bound: [[-1.0]]}, [0.0])
        case MaxOfBlocks(blocks=blocks):
            _check_blocks(blocks, dim)
            for idx, sub in blocks:
                add_norm_bound(lp, sub, rows(idx), const[list(idx)], bound)
        case SumOfBlocks(blocks=blocks):
            _check_blocks(blocks, dim)
            names = []
            for idx, sub in blocks:
                t = f"_sb_{next(_aux)}"
                lp.add_variables(t, 1)
                names.append(t)
                add_norm_bound(lp, sub, rows(idx), const[list(idx)], t)
            lp.add_ub({**{t: [[1.0]] for t in names}, bound: [[-1.0]]}, [0.0])
        case _:
            raise TypeError(f"{type(n).__name__} has no LP epigraph")


def norm_to_dict(n: NormSpec) -> dict:
    match n:
        case L1Norm():
            return {"kind": "L1"}
        case LInfNorm():
            return {"kind": "LInf"}
        case L2Norm(weights=w):
            return {"kind": "L2"} if w is None else {"kind": "L2", "weights": list(w)}
        case MaxOfBlocks(blocks=blocks) | SumOfBlocks(blocks=blocks):
            kind = "MaxOfBlocks" if isinstance(n, MaxOfBlocks) else "SumOfBlocks"
            return {
                "kind": kind,
                "blocks": [{"index": list(idx), "norm": norm_to_dict(sub)} for idx, sub in blocks],
            }
        case PolytopeHull(vertices=verts):
            return {"kind": "PolytopeHull", "vertices": verts.tolist()}
    raise TypeError(f"unknown norm kind {type(n).__name__}")


def norm_from_dict(data: dict) -> NormSpec:
    kind = data.get("kind")
    if kind == "L1":
        return L1Norm()
    if kind == "LInf":
        return LInfNorm()
    if kind == "L2":
        w = data.get("weights")
        return L2Norm(None if w is None else tuple(float(x) for x in w))
    if kind in ("MaxOfBlocks", "SumOfBlocks"):
        blocks = tuple(
            (tuple(int(i) for i in b["index"]), norm_from_dict(b["norm"])) for b in data["blocks"]
        )
        return MaxOfBlocks(blocks) if kind == "MaxOfBlocks" else SumOfBlocks(blocks)
    if kind == "PolytopeHull":
        return PolytopeHull(np.asarray(data["vertices"], dtype=float))
    raise ValueError(f"unknown norm kind {kind!r}")


def norm_subgradient(n: NormSpec, v) -> np.ndarray:
    """A subgradient of the norm at v (non-hull kinds only)."""
    vec = np.asarray(v, dtype=float).reshape(-1)
    match n:
        case L1Norm():
            return np.sign(vec)
        case LInfNorm():
            g = np.zeros_like(vec)
            if vec.size:
                i = int(np.argmax(np.abs(vec)))
                g[i] = np.sign(vec[i])
            return g
        case L2Norm():
            w = l2_weights(n, vec.shape[0])
            norm = norm_eval(n, vec)
            return w * vec / norm if norm > 0 else np.zeros_like(vec)
        case MaxOfBlocks(blocks=blocks):
            values = [norm_eval(sub, vec[list(idx)]) for idx, sub in blocks]
            idx, sub = blocks[int(np.argmax(values))]
            g = np.zeros_like(vec)
            g[list(idx)] = norm_subgradient(sub, vec[list(idx)])
            return g
        case SumOfBlocks(blocks=blocks):
            g = np.zeros_like(vec)
            for idx, sub in blocks:
                g[list(idx)] = norm_subgradient(sub, vec[list(idx)])
            return g
    raise TypeError(f"no subgradient routine for {type(n).__name__}")
