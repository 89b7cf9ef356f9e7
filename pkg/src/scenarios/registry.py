"""
Named scenario builders and loading of scenario JSON, which is either a
full scenario document or a builder reference {"builder": name, "params": {...}}.
"""

from __future__ import annotations

import json
from collections.abc import Callable
from pathlib import Path
from typing import Any

from src.errors import ConfigError
from src.logger.logging_config import get_logger
from src.scenarios.conditional import (
    pcb_desk,
    pcb_scenario,
    rot_triangle,
    square_isometries,
    zerosum_scenario,
)
from src.scenarios.geometric import hyperplane_scenario, lower_r_scenario, lower_s_scenario, traffic_abcde
from src.scenarios.point_valued import dhk_torus, finite_stochastic, linear_bandit, moment_scenario
from src.scenarios.scenario import Scenario

logger = get_logger(__name__)

SCENARIO_BUILDERS: dict[str, Callable[..., Scenario]] = {
    "finite_stochastic": finite_stochastic,
    "linear_bandit": linear_bandit,
    "dhk_torus": dhk_torus,
    "rot_triangle": rot_triangle,
    "square_isometries": square_isometries,
    "hyperplane": hyperplane_scenario,
    "moment": moment_scenario,
    "pcb": pcb_scenario,
    "pcb_desk": pcb_desk,
    "traffic_abcde": traffic_abcde,
    "zerosum": zerosum_scenario,
    "lower_s": lower_s_scenario,
    "lower_r": lower_r_scenario,
}

# Small presets used by the sample configs and the test suite
SCENARIO_DEFAULTS: dict[str, dict[str, Any]] = {
    "finite_stochastic": {"means": [0.5, 0.2, -0.1, -0.4]},
    "dhk_torus": {"n": 1, "arm_res": 8, "h_res": 8},
    "rot_triangle": {"arm_res": 12, "h_res": 6},
    "square_isometries": {"h_res": 3},
    "hyperplane": {"n": 3, "m": 2, "n_arms": 6, "n_hyps": 6, "seed": 0},
    "moment": {"n": 2, "curve_samples": 65, "arm_res": 5, "h_res": 5},
    "pcb_desk": {"arm_res": 3, "h_res": 3},
    "traffic_abcde": {"tau_min": 1.0, "tau_max": 2.0, "grid": 2, "h_res": 3},
    "zerosum": {"payoffs": [[[1.0, -1.0], [-1.0, 1.0]], [[0.5, -0.5], [-0.5, 0.5]]], "x_grid": 4},
    "lower_s": {"D": 4, "alpha": 0.25, "arm_res": 16, "h_res": 8},
    "lower_r": {"lam": 4.0, "arm_res": 9, "h_res": 9},
}


def build_scenario(name: str, **params) -> Scenario:
    """
    Build a named scenario; missing parameters fall back to SCENARIO_DEFAULTS.

    Raises:
        ConfigError: On an unknown builder or parameters it does not accept.
    """
    if name not in SCENARIO_BUILDERS:
        raise ConfigError(f"unknown scenario builder {name!r}; expected one of {sorted(SCENARIO_BUILDERS)}")
    merged = {**SCENARIO_DEFAULTS.get(name, {}), **params}
    try:
        scenario = SCENARIO_BUILDERS[name](**merged)
    except TypeError as exc:
        raise ConfigError(f"bad parameters for scenario {name!r}: {exc}") from exc
    scenario.meta["builder"] = {"name": name, "params": merged}
    return scenario


def scenario_from_document(data: dict) -> Scenario:
    """
    Raises:
        ConfigError: If the document is neither a scenario nor a builder reference.
    """
    if not isinstance(data, dict):
        raise ConfigError("a scenario must be a JSON object")
    if "builder" in data:
        unknown = set(data) - {"builder", "params"}
        if unknown:
            raise ConfigError(f"unknown keys in builder reference: {sorted(unknown)}")
        return build_scenario(str(data["builder"]), **dict(data.get("params") or {}))
    try:
        return Scenario.from_dict(data)
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError(f"malformed scenario document: {exc}") from exc


def load_scenario(path: str | Path) -> Scenario:
    """
    Raises:
        ConfigError: If the file is missing, not JSON or not a scenario.
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise ConfigError(f"scenario file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"scenario file {path} is not valid JSON: {exc}") from exc
    scenario = scenario_from_document(data)
    logger.info(f"Loaded scenario {scenario.name!r} from {path}")
    return scenario
