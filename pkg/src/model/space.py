"""The outcome space: a convex body, its normalising covector and its norm."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from src.geometry import ConvexBody, NormSpec, body_from_dict, body_to_dict


@dataclass(frozen=True, eq=False)
class OutcomeSpace:
    """
    (Y, mu, body) with the derived y_norm, whose unit ball is the absolute
    convex hull of the body.
    """

    body: ConvexBody

    @property
    def dim(self) -> int:
        return self.body.dim

    @property
    def mu(self) -> np.ndarray:
        return self.body.mu

    @cached_property
    def y_norm(self) -> NormSpec:
        return self.body.induced_norm()

    def normalisation_error(self, resolution: int | None = None) -> float:
        """Largest |mu(v) - 1| over the extreme points of the body."""
        pts = self.body.extreme_points(resolution)
        return float(np.max(np.abs(pts @ self.mu - 1.0)))

    def to_dict(self) -> dict:
        return {"dim": self.dim, "mu": self.mu.tolist(), "body": body_to_dict(self.body)}

    @classmethod
    def from_dict(cls, data: dict) -> OutcomeSpace:
        space = cls(body_from_dict(data["body"]))
        if "dim" in data and int(data["dim"]) != space.dim:
            raise ValueError(f"space dim {data['dim']} does not match body dim {space.dim}")
        return space
