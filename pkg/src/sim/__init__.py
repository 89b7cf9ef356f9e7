"""
Simulation: episodes, regret accounting, Monte-Carlo aggregation,
concentration experiments and the CSV / manifest writers.
"""

from .concentration import (
    ConcentrationResult,
    concentration_experiment,
    concentration_sweep,
    credal_flat,
)
from .episode import Trace, run_episode
from .io import (
    config_hash,
    write_concentration_csv,
    write_manifest,
    write_summary_csv,
    write_table_csv,
    write_trace_csv,
)
from .monte_carlo import EpisodeSpec, MonteCarloSummary, monte_carlo, run_repetition
from .regret import RegretRecord, regret_trace

__all__ = [
    # concentration.py
    "ConcentrationResult",
    "concentration_experiment",
    "concentration_sweep",
    "credal_flat",
    # episode.py
    "Trace",
    "run_episode",
    # io.py
    "config_hash",
    "write_concentration_csv",
    "write_manifest",
    "write_summary_csv",
    "write_table_csv",
    "write_trace_csv",
    # monte_carlo.py
    "EpisodeSpec",
    "MonteCarloSummary",
    "monte_carlo",
    "run_repetition",
    # regret.py
    "RegretRecord",
    "regret_trace",
]
