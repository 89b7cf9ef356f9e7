"""
CSV and manifest writers. Floats are written with 17 significant digits so
that equal runs produce equal bytes.
"""

from __future__ import annotations

import csv
import hashlib
import json
import platform
from importlib import metadata
from pathlib import Path

import numpy as np

from src.logger.logging_config import get_logger
from src.sim.concentration import ConcentrationResult
from src.sim.episode import Trace
from src.sim.monte_carlo import MonteCarloSummary
from src.sim.regret import RegretRecord

logger = get_logger(__name__)

TRACE_HEADER = ("round", "arm", "reward", "cum_regret")
SUMMARY_HEADER = ("round", "mean_regret", "std_regret", "reps")
CONCENTRATION_HEADER = ("tau", "delta", "reps", "violation_rate", "simplex_bound", "general_bound")


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


def _write_rows(path: Path, header, rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        writer.writerows([fmt(v) for v in row] for row in rows)
    return path


def write_trace_csv(path: Path, trace: Trace, regret: RegretRecord) -> Path:
    rows = (
        (n, trace.arms[n], trace.rewards[n], regret.cumulative[n])
        for n in range(len(trace))
    )
    return _write_rows(path, TRACE_HEADER, rows)


def write_summary_csv(path: Path, summary: MonteCarloSummary) -> Path:
    rows = (
        (n, summary.mean_regret[n], summary.std_regret[n], summary.reps)
        for n in range(summary.mean_regret.shape[0])
    )
    return _write_rows(path, SUMMARY_HEADER, rows)


def write_concentration_csv(path: Path, results: list[ConcentrationResult]) -> Path:
    rows = (
        (r.tau, r.delta, r.reps, r.violation_rate, r.simplex_bound, r.general_bound)
        for r in results
    )
    return _write_rows(path, CONCENTRATION_HEADER, rows)


def write_table_csv(path: Path, header, rows) -> Path:
    return _write_rows(path, header, rows)


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def config_hash(config: dict) -> str:
    return hashlib.sha256(canonical_json(config).encode()).hexdigest()


def _versions() -> dict:
    out = {"python": platform.python_version()}
    for pkg in ("imprecise-bandits", "numpy", "scipy"):
        try:
            out[pkg] = metadata.version(pkg)
        except metadata.PackageNotFoundError:
            out[pkg] = None
    return out


def write_manifest(out_dir: Path, config: dict, seed: int, command: str, extra: dict | None = None) -> Path:
    """
    Write manifest.json: the config copy, its sha256, the seed and tool
    versions. Nothing time-dependent goes in, so reruns give equal bytes.
    """
    manifest = {
        "command": command,
        "config": config,
        "config_sha256": config_hash(config),
        "seed": int(seed),
        "versions": _versions(),
    }
    if extra:
        manifest.update(extra)
    path = Path(out_dir) / "manifest.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    logger.debug(f"manifest written to {path}")
    return path
