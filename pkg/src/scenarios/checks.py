"""Reproduce the known check values a builder records in its metadata."""

from __future__ import annotations

import re
from dataclasses import asdict, dataclass

from src.certificates import gap_compute, param_C, param_R, param_S
from src.logger.logging_config import get_logger
from src.scenarios.scenario import Scenario

logger = get_logger(__name__)

_INDEXED = re.compile(r"^(optimal_value|lower_prevision)\[(\d+)(?:,(\d+))?\]$")


@dataclass
class KnownValueCheck:
    quantity: str
    expected: float
    computed: float
    relation: str
    provenance: str
    passed: bool


def evaluate_quantity(scenario: Scenario, quantity: str) -> float:
    """
    Compute a named quantity: R, S, C, gap, dim_w, dim_z, dim_y, n_arms,
    n_hypotheses, optimal_value[h] or lower_prevision[x,h].

    Raises:
        KeyError: On an unknown quantity.
    """
    fam, space = scenario.family, scenario.space
    match quantity:
        case "R":
            return param_R(fam, space, scenario.zbar)
        case "S":
            return param_S(fam, space).value
        case "C":
            return param_C(scenario.reward, space, fam)
        case "gap":
            return gap_compute(fam, scenario.reward, space, scenario.table).value
        case "dim_w":
            return float(fam.dim_w)
        case "dim_z":
            return float(fam.dim_z)
        case "dim_y":
            return float(fam.dim_y)
        case "n_arms":
            return float(fam.n_arms)
        case "n_hypotheses":
            return float(fam.n_hypotheses)
    match_ = _INDEXED.match(quantity.replace(" ", ""))
    if match_ is None:
        raise KeyError(f"unknown quantity {quantity!r}")
    kind, first, second = match_.groups()
    if kind == "optimal_value":
        return scenario.optimal(int(first))[1]
    if second is None:
        raise KeyError(f"{quantity!r} needs an arm and a hypothesis index")
    return float(scenario.table[int(first), int(second)])


def check_known_values(scenario: Scenario) -> list[KnownValueCheck]:
    """Evaluate every known value; quantities are computed once each."""
    cache: dict[str, float] = {}
    checks = []
    for kv in scenario.known_values:
        if kv.quantity not in cache:
            cache[kv.quantity] = evaluate_quantity(scenario, kv.quantity)
        computed = cache[kv.quantity]
        check = KnownValueCheck(kv.quantity, kv.value, computed, kv.relation, kv.provenance, kv.holds(computed))
        if not check.passed:
            logger.warning(
                f"{scenario.name}: {kv.quantity} = {computed:.6g}, expected {kv.relation} {kv.value:.6g}"
            )
        checks.append(check)
    return checks


def checks_to_dict(checks: list[KnownValueCheck]) -> list[dict]:
    return [asdict(c) for c in checks]

