"""Nature construction from experiment-config entries."""

from __future__ import annotations

from src.errors import ConfigError
from src.nature.adversaries import FixedMeanNature, GreedyAdversary
from src.nature.base import NaturePolicy
from src.nature.lower_bounds import LowerRAdversary, LowerSAdversary

NATURE_KINDS: dict[str, type[NaturePolicy]] = {
    "greedy": GreedyAdversary,
    "fixed_mean": FixedMeanNature,
    "lower_s": LowerSAdversary,
    "lower_r": LowerRAdversary,
}


def make_nature(kind: str, params: dict | None = None) -> NaturePolicy:
    """
    Raises:
        ConfigError: On an unknown kind or parameters the policy does not take.
    """
    if kind not in NATURE_KINDS:
        raise ConfigError(f"unknown nature kind {kind!r}; expected one of {sorted(NATURE_KINDS)}")
    try:
        return NATURE_KINDS[kind](**(params or {}))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad parameters for nature {kind!r}: {exc}") from exc
