"""
Process-wide numerical tolerances.

Every routine reads its thresholds through `get_tolerance` so that a single
`set_tolerances` call (CLI flag or test fixture) changes them consistently.
"""

from __future__ import annotations

from collections.abc import Iterator
from contextlib import contextmanager

TOLERANCES: dict[str, float] = {
    # LP feasibility of returned points and equality residuals
    "tol_feas": 1e-9,
    # LP objective accuracy
    "tol_obj": 1e-8,
    # smallest admissible simplex pivot
    "pivot_eps": 1e-11,
    # relative threshold for numerical rank
    "rank_eps": 1e-10,
    # iterative (subgradient / alternating projection) optimality
    "tol_opt": 1e-6,
}

_DEFAULTS = dict(TOLERANCES)


def get_tolerance(name: str) -> float:
    """Return the current value of a named tolerance."""
    try:
        return TOLERANCES[name]
    except KeyError:
        raise KeyError(f"unknown tolerance {name!r}") from None


def set_tolerances(**overrides: float) -> None:
    """
    Override tolerances process-wide.

    Raises:
        KeyError: If a name is not a known tolerance.
        ValueError: If a value is not strictly positive.
    """
    for name, value in overrides.items():
        if name not in TOLERANCES:
            raise KeyError(f"unknown tolerance {name!r}")
        if not value > 0:
            raise ValueError(f"tolerance {name} must be positive, got {value}")
    TOLERANCES.update({k: float(v) for k, v in overrides.items()})


def reset_tolerances() -> None:
    TOLERANCES.clear()
    TOLERANCES.update(_DEFAULTS)


@contextmanager
def tolerances(**overrides: float) -> Iterator[None]:
    """Temporarily override tolerances inside a `with` block."""
    saved = dict(TOLERANCES)
    set_tolerances(**overrides)
    try:
        yield
    finally:
        TOLERANCES.clear()
        TOLERANCES.update(saved)
