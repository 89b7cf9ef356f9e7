"""The round-based agent contract: reset, then alternate select_arm and observe."""

from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np

from src.errors import PolicyProtocolError
from src.numkit import make_rng
from src.scenarios.scenario import Scenario


class AgentPolicy(ABC):
    """
    Template for agent policies.

    Subclasses implement `_reset`, `_select` and `_observe`; the public
    methods enforce the call order and own the seeded RNG stream.
    """

    name = "agent"

    def __init__(self):
        self.scenario: Scenario | None = None
        self.horizon = 0
        self.rng: np.random.Generator | None = None
        self.flags: dict[str, object] = {}
        self._pending: int | None = None

    def reset(self, scenario: Scenario, horizon: int, seed: int) -> None:
        self.scenario = scenario
        self.horizon = int(horizon)
        self.rng = make_rng(seed)
        self.flags = {}
        self._pending = None
        self._reset()

    def select_arm(self) -> int:
        """
        Raises:
            PolicyProtocolError: Before reset, or twice without an observation.
        """
        if self.scenario is None:
            raise PolicyProtocolError(f"{self.name}: select_arm before reset")
        if self._pending is not None:
            raise PolicyProtocolError(f"{self.name}: select_arm called twice without observe")
        arm = int(self._select())
        self._pending = arm
        return arm

    def observe(self, y) -> bool:
        """
        Feed the outcome of the selected arm.

        Returns:
            bool: Whether the policy ended an internal cycle on this round.

        Raises:
            PolicyProtocolError: If no arm is awaiting its outcome.
        """
        if self._pending is None:
            raise PolicyProtocolError(f"{self.name}: observe without a selected arm")
        arm, self._pending = self._pending, None
        return bool(self._observe(arm, np.asarray(y, dtype=float).reshape(-1)))

    def _reset(self) -> None:
        pass

    @abstractmethod
    def _select(self) -> int: ...

    @abstractmethod
    def _observe(self, arm: int, y: np.ndarray) -> bool | None: ...
