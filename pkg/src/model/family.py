"""
Hypothesis families: an arm grid, a hypothesis grid and the bilinear
constraint map F(x, z, y)_w = sum_ij T_x[w, i, j] z_i y_j, stored as one
three-index tensor per arm.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from src.errors import DimensionMismatchError, IndexOutOfGridError
from src.geometry import BodySection
from src.logger.logging_config import get_logger
from src.logger.timing import Timer
from src.model.space import OutcomeSpace
from src.numkit import rank

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class HypothesisFamily:
    """
    Finite arm and hypothesis grids with per-arm constraint tensors.

    `tensors` has shape (n_arms, D_W, D_Z, D_Y). `sine_hint` is optional
    structural metadata (for instance the components of a conditional
    chain) that the S certificate can use instead of sampling.
    """

    arms: np.ndarray = field(repr=False)
    hypotheses: np.ndarray = field(repr=False)
    tensors: np.ndarray = field(repr=False)
    sine_hint: dict | None = None

    def __post_init__(self):
        arms = np.atleast_2d(np.asarray(self.arms, dtype=float))
        tensors = np.asarray(self.tensors, dtype=float)
        if tensors.ndim != 4:
            raise DimensionMismatchError(f"tensors must be 4-D, got shape {tensors.shape}")
        hyps = np.asarray(self.hypotheses, dtype=float).reshape(-1, tensors.shape[2])
        if arms.shape[0] != tensors.shape[0]:
            raise DimensionMismatchError(
                f"{arms.shape[0]} arms but {tensors.shape[0]} constraint tensors"
            )
        object.__setattr__(self, "arms", arms)
        object.__setattr__(self, "hypotheses", hyps)
        object.__setattr__(self, "tensors", tensors)

    @property
    def n_arms(self) -> int:
        return self.arms.shape[0]

    @property
    def n_hypotheses(self) -> int:
        return self.hypotheses.shape[0]

    @property
    def dim_w(self) -> int:
        return self.tensors.shape[1]

    @property
    def dim_z(self) -> int:
        return self.tensors.shape[2]

    @property
    def dim_y(self) -> int:
        return self.tensors.shape[3]

    @property
    def d(self) -> int:
        """Dimension of the credal sections' affine hull: D_Y - D_W."""
        return self.dim_y - self.dim_w

    def arm_tensor(self, x: int) -> np.ndarray:
        if not 0 <= int(x) < self.n_arms:
            raise IndexOutOfGridError(f"arm {x} outside grid of {self.n_arms}")
        return self.tensors[int(x)]

    def theta(self, h) -> np.ndarray:
        """A grid hypothesis by index, or a raw vector in Z passed through."""
        if isinstance(h, (int, np.integer)):
            if not 0 <= int(h) < self.n_hypotheses:
                raise IndexOutOfGridError(f"hypothesis {h} outside grid of {self.n_hypotheses}")
            return self.hypotheses[int(h)]
        vec = np.asarray(h, dtype=float).reshape(-1)
        if vec.shape[0] != self.dim_z:
            raise DimensionMismatchError(f"hypothesis has length {vec.shape[0]}, expected {self.dim_z}")
        return vec

    def to_dict(self) -> dict:
        data = {
            "arms": self.arms.tolist(),
            "H": self.hypotheses.tolist(),
            "F": self.tensors.tolist(),
        }
        if self.sine_hint is not None:
            data["sine_hint"] = self.sine_hint
        return data

    @classmethod
    def from_dict(cls, data: dict) -> HypothesisFamily:
        tensors = np.asarray(data["F"], dtype=float)
        hyps = np.asarray(data["H"], dtype=float).reshape(-1, tensors.shape[2])
        return cls(np.asarray(data["arms"], dtype=float), hyps, tensors, data.get("sine_hint"))


def f_matrix(fam: HypothesisFamily, x: int, theta) -> np.ndarray:
    """
    The constraint matrix F_{x theta} with (F)_{wj} = sum_i T_x[w, i, j] theta_i.

    Parameters:
        fam (HypothesisFamily): The family.
        x (int): Arm index.
        theta (int | array_like): Hypothesis index or vector.

    Returns:
        np.ndarray: Matrix of shape (D_W, D_Y).

    Raises:
        IndexOutOfGridError: If an index is outside its grid.
    """
    return np.einsum("wij,i->wj", fam.arm_tensor(x), fam.theta(theta))


def credal_section(fam: HypothesisFamily, space: OutcomeSpace, x: int, theta) -> BodySection:
    """K_theta(x)+ = {y in body : F_{x theta} y = 0}."""
    return BodySection.kernel(space.body, f_matrix(fam, x, theta))


@dataclass
class CellCheck:
    arm: int
    hypothesis: int
    rank: int
    surjective: bool
    feasible: bool

    @property
    def passed(self) -> bool:
        return self.surjective and self.feasible


@dataclass
class FamilyReport:
    cells: list[CellCheck] = field(default_factory=list)
    issues: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.issues and all(c.passed for c in self.cells)

    @property
    def failures(self) -> list[CellCheck]:
        return [c for c in self.cells if not c.passed]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "cells": len(self.cells),
            "issues": list(self.issues),
            "failures": [
                {"arm": c.arm, "hypothesis": c.hypothesis, "rank": c.rank,
                 "surjective": c.surjective, "feasible": c.feasible}
                for c in self.failures
            ],
        }


def validate_family(fam: HypothesisFamily, space: OutcomeSpace) -> FamilyReport:
    """
    Check surjectivity (rank F_{x theta} = D_W) and feasibility (the credal
    section is nonempty) on every grid cell. Failures are reported, never
    raised.
    """
    report = FamilyReport()
    if fam.dim_y != space.dim:
        report.issues.append(f"family acts on dimension {fam.dim_y}, space has {space.dim}")
        return report
    if fam.n_hypotheses == 0:
        report.issues.append("hypothesis grid is empty")
    if fam.n_arms == 0:
        report.issues.append("arm grid is empty")

    with Timer("validate_family", arms=fam.n_arms, hypotheses=fam.n_hypotheses):
        for x in range(fam.n_arms):
            for h in range(fam.n_hypotheses):
                f = f_matrix(fam, x, h)
                r = rank(f)
                feasible = not credal_section(fam, space, x, h).is_empty()
                report.cells.append(CellCheck(x, h, r, r == fam.dim_w, feasible))

    if not report.passed:
        logger.warning(
            f"family validation: {len(report.failures)} failing cells, issues={report.issues}"
        )
    return report
