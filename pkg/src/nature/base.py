"""The nature contract: reset on a true hypothesis, then answer each arm with an outcome."""

from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np

from src.errors import PolicyProtocolError
from src.numkit import make_rng
from src.scenarios.scenario import Scenario


class NaturePolicy(ABC):
    """
    Every response distribution must have its mean in the credal section
    K_theta*(x)+ of the selected arm. Policies keep only the history
    summary they need.
    """

    name = "nature"

    def __init__(self):
        self.scenario: Scenario | None = None
        self.theta: int | None = None
        self.rng: np.random.Generator | None = None

    def reset(self, scenario: Scenario, theta: int, seed: int) -> None:
        self.scenario = scenario
        self.theta = int(theta)
        self.rng = make_rng(seed)
        self._reset()

    def respond(self, x: int) -> np.ndarray:
        """
        Raises:
            PolicyProtocolError: Before reset.
        """
        if self.scenario is None:
            raise PolicyProtocolError(f"{self.name}: respond before reset")
        return self._respond(int(x))

    def _reset(self) -> None:
        pass

    @abstractmethod
    def _respond(self, x: int) -> np.ndarray: ...

    def _sample_vertex(self, weights: np.ndarray) -> np.ndarray:
        verts = self.scenario.space.body.vertices
        p = np.clip(np.asarray(weights, dtype=float), 0.0, None)
        return verts[int(self.rng.choice(verts.shape[0], p=p / p.sum()))].copy()
