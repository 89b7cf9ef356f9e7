"""
Experiment configuration: the JSON schema every command reads, validated
before anything runs.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any

from src.agents import AGENT_KINDS
from src.errors import ConfigError
from src.logger.logging_config import get_logger
from src.nature import NATURE_KINDS

logger = get_logger(__name__)

BOUNDS_DEFAULTS: dict[str, Any] = {
    "horizons": [100, 1000, 10000],
    "eta": None,
    "delta": None,
    "theorems": None,
}

CONCENTRATION_DEFAULTS: dict[str, Any] = {
    "arm": 0,
    "taus": [50, 200, 800],
    "delta": 0.3,
    "reps": 200,
}

POLICY_KEYS = {"kind", "params"}


@dataclass
class PolicyConfig:
    kind: str
    params: dict[str, Any] = field(default_factory=dict)


@dataclass
class ExperimentConfig:
    """
    One experiment. `scenario` is a path to a scenario JSON (relative to the
    config file), an inline scenario document or a builder reference;
    `theta` is a hypothesis index or "sweep" for every hypothesis.
    """

    scenario: str | dict
    agent: PolicyConfig = field(default_factory=lambda: PolicyConfig("iucb"))
    nature: PolicyConfig = field(default_factory=lambda: PolicyConfig("greedy"))
    theta: int | str = 0
    horizon: int = 1000
    reps: int = 1
    seed: int = 0
    out: str = "results"
    threads: int | None = None
    validate: bool = True
    bounds: dict[str, Any] = field(default_factory=lambda: dict(BOUNDS_DEFAULTS))
    concentration: dict[str, Any] = field(default_factory=lambda: dict(CONCENTRATION_DEFAULTS))
    # directory that relative scenario paths resolve against
    base_dir: Path = field(default=Path("."), repr=False, compare=False)

    def to_dict(self) -> dict:
        data = asdict(self)
        data.pop("base_dir")
        return data

    def thetas(self, n_hypotheses: int) -> list[int]:
        """
        Raises:
            ConfigError: If an index is outside the hypothesis grid.
        """
        if self.theta == "sweep":
            return list(range(n_hypotheses))
        if not 0 <= int(self.theta) < n_hypotheses:
            raise ConfigError(f"theta {self.theta} outside a grid of {n_hypotheses} hypotheses")
        return [int(self.theta)]


def _policy(data, name: str, kinds) -> PolicyConfig:
    if isinstance(data, str):
        data = {"kind": data}
    if not isinstance(data, dict) or "kind" not in data:
        raise ConfigError(f"{name} must be an object with a 'kind'")
    unknown = set(data) - POLICY_KEYS
    if unknown:
        raise ConfigError(f"unknown keys in {name}: {sorted(unknown)}")
    if data["kind"] not in kinds:
        raise ConfigError(f"unknown {name} kind {data['kind']!r}; expected one of {sorted(kinds)}")
    params = data.get("params") or {}
    if not isinstance(params, dict):
        raise ConfigError(f"{name}.params must be an object")
    return PolicyConfig(str(data["kind"]), dict(params))


def _section(data, name: str, defaults: dict) -> dict:
    if data is None:
        return dict(defaults)
    if not isinstance(data, dict):
        raise ConfigError(f"{name} must be an object")
    unknown = set(data) - set(defaults)
    if unknown:
        raise ConfigError(f"unknown keys in {name}: {sorted(unknown)}")
    return {**defaults, **data}


def _int(data: dict, key: str, default: int, minimum: int) -> int:
    value = data.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ConfigError(f"{key} must be an integer >= {minimum}, got {value!r}")
    return value


def parse_config(data: dict, base_dir: str | Path = ".") -> ExperimentConfig:
    """
    Validate a decoded config document.

    Raises:
        ConfigError: On unknown keys, missing fields or values of the wrong type.
    """
    if not isinstance(data, dict):
        raise ConfigError("an experiment config must be a JSON object")
    known = {f.name for f in fields(ExperimentConfig)} - {"base_dir"}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if "scenario" not in data:
        raise ConfigError("config is missing 'scenario'")
    scenario = data["scenario"]
    if not isinstance(scenario, (str, dict)):
        raise ConfigError("scenario must be a path or an object")

    theta = data.get("theta", 0)
    if theta != "sweep" and (isinstance(theta, bool) or not isinstance(theta, int) or theta < 0):
        raise ConfigError(f"theta must be a non-negative index or 'sweep', got {theta!r}")
    threads = data.get("threads")
    if threads is not None:
        threads = _int(data, "threads", 1, 1)
    validate = data.get("validate", True)
    if not isinstance(validate, bool):
        raise ConfigError("validate must be true or false")

    return ExperimentConfig(
        scenario=scenario,
        agent=_policy(data.get("agent", {"kind": "iucb"}), "agent", AGENT_KINDS),
        nature=_policy(data.get("nature", {"kind": "greedy"}), "nature", NATURE_KINDS),
        theta=theta,
        horizon=_int(data, "horizon", 1000, 0),
        reps=_int(data, "reps", 1, 1),
        seed=_int(data, "seed", 0, 0),
        out=str(data.get("out", "results")),
        threads=threads,
        validate=validate,
        bounds=_section(data.get("bounds"), "bounds", BOUNDS_DEFAULTS),
        concentration=_section(data.get("concentration"), "concentration", CONCENTRATION_DEFAULTS),
        base_dir=Path(base_dir),
    )


def load_config(path: str | Path) -> ExperimentConfig:
    """
    Raises:
        ConfigError: If the file is missing, not JSON or fails the schema.
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    config = parse_config(data, path.parent)
    logger.debug(f"Loaded config {path}")
    return config


def resolve_threads(flag: int | None, config: ExperimentConfig | None = None) -> int:
    """--threads, then the config, then IB_THREADS, then 1."""
    if flag is not None:
        return max(1, int(flag))
    if config is not None and config.threads is not None:
        return config.threads
    env = os.environ.get("IB_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ConfigError(f"IB_THREADS must be an integer, got {env!r}") from exc
    return 1
