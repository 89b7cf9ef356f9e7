"""
The Scenario: an outcome space, a hypothesis family and a reward, with
builder metadata (grid resolutions, known check values) and lazily
computed shared artefacts (the prevision table and the Z-bar space).
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from src.certificates import ZBarSpace, build_zbar
from src.errors import ScenarioValidationError
from src.geometry import Polytope
from src.logger.logging_config import get_logger
from src.model import (
    FamilyReport,
    HypothesisFamily,
    OutcomeSpace,
    RewardSpec,
    argmax_lowest,
    prevision_table,
    validate_family,
)

logger = get_logger(__name__)


@dataclass(frozen=True)
class KnownValue:
    """A value a certificate or model operation must reproduce."""

    quantity: str
    value: float
    provenance: str
    tol: float = 1e-6
    # "eq", "le" or "ge": how the computed value compares to `value`
    relation: str = "eq"

    def holds(self, computed: float) -> bool:
        match self.relation:
            case "le":
                return computed <= self.value + self.tol
            case "ge":
                return computed >= self.value - self.tol
        return abs(computed - self.value) <= self.tol


@dataclass(frozen=True, eq=False)
class Scenario:
    name: str
    space: OutcomeSpace
    family: HypothesisFamily
    reward: RewardSpec
    meta: dict = field(default_factory=dict)

    @property
    def n_arms(self) -> int:
        return self.family.n_arms

    @property
    def n_hypotheses(self) -> int:
        return self.family.n_hypotheses

    @property
    def simplex_mode(self) -> bool:
        """Whether outcomes are labels, i.e. the body is a probability simplex."""
        body = self.space.body
        return isinstance(body, Polytope) and body.is_simplex

    @property
    def known_values(self) -> list[KnownValue]:
        return [KnownValue(**kv) for kv in self.meta.get("known_values", [])]

    @cached_property
    def table(self) -> np.ndarray:
        """Lower previsions, one row per arm and one column per hypothesis."""
        return prevision_table(self.family, self.reward, self.space)

    @cached_property
    def zbar(self) -> ZBarSpace:
        return build_zbar(self.family, self.space)

    def optimal(self, theta: int) -> tuple[int, float]:
        """Optimal arm of hypothesis `theta` and its lower prevision."""
        column = self.table[:, int(theta)]
        arm = argmax_lowest(column)
        return arm, float(column[arm])

    def validate(self) -> FamilyReport:
        return validate_family(self.family, self.space)

    def require_valid(self) -> FamilyReport:
        """
        Raises:
            ScenarioValidationError: If some grid cell fails the checks.
        """
        report = self.validate()
        if not report.passed:
            raise ScenarioValidationError(
                f"scenario {self.name!r} fails validation on {len(report.failures)} cells"
                + (f"; {'; '.join(report.issues)}" if report.issues else "")
            )
        return report

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "space": self.space.to_dict(),
            "family": self.family.to_dict(),
            "reward": self.reward.to_dict(),
            "meta": _plain(self.meta),
        }

    @classmethod
    def from_dict(cls, data: dict) -> Scenario:
        for key in ("name", "space", "family", "reward"):
            if key not in data:
                raise KeyError(f"scenario JSON is missing {key!r}")
        return cls(
            name=str(data["name"]),
            space=OutcomeSpace.from_dict(data["space"]),
            family=HypothesisFamily.from_dict(data["family"]),
            reward=RewardSpec.from_dict(data["reward"]),
            meta=dict(data.get("meta", {})),
        )


def _plain(value):
    """Convert numpy values and tuples into JSON-native ones."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, KnownValue):
        return _plain(asdict(value))
    return value


def scenario_to_json(scenario: Scenario) -> str:
    return json.dumps(scenario.to_dict(), indent=2, sort_keys=True) + "\n"


def scenario_from_json(text: str) -> Scenario:
    return Scenario.from_dict(json.loads(text))


def save_scenario(scenario: Scenario, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(scenario_to_json(scenario), encoding="utf-8")
    logger.info(f"Scenario {scenario.name!r} written to {path}")
    return path

