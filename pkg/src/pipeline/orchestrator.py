"""
Command implementations behind main.py.

Each command loads its inputs, runs, writes CSV/JSON plus a manifest into
the output directory and prints the written paths on stdout. Failures
propagate as exceptions; main.py maps them onto exit codes.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from src.certificates import bound_rows, certificate_report, compute_certificates, family_dims
from src.errors import ConfigError
from src.logger.logging_config import get_logger
from src.logger.timing import Timer
from src.nature import make_nature
from src.pipeline.config import ExperimentConfig, load_config, resolve_threads
from src.pipeline.stages import resolve_scenario, run_theta_stage, validation_stage
from src.scenarios import Scenario, check_known_values, checks_to_dict
from src.sim import concentration_sweep, write_concentration_csv, write_manifest, write_table_csv

logger = get_logger(__name__)

BOUNDS_HEADER = ("theorem", "N", "eta", "delta", "value")


def _json_safe(value):
    """Non-finite floats become null."""
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def _write_json(path: Path, data: dict) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_json_safe(data), indent=2, sort_keys=True) + "\n")
    return path


def _inputs(config_path, scenario_ref) -> tuple[ExperimentConfig | None, Scenario]:
    """
    Raises:
        ConfigError: If neither a config nor a scenario is given.
    """
    config = load_config(config_path) if config_path else None
    if scenario_ref:
        return config, resolve_scenario(scenario_ref)
    if config is None:
        raise ConfigError("give --config or --scenario")
    return config, resolve_scenario(config.scenario, config.base_dir)


def _out_dir(out, config: ExperimentConfig | None) -> Path:
    return Path(out or (config.out if config else "results"))


def cmd_run(config_path, out=None, seed=None, threads=None) -> int:
    """
    Run the configured experiment for one hypothesis or all of them.

    Output layout: <out>/theta_<k>/rep_<r>.csv, <out>/theta_<k>/summary.csv
    and <out>/manifest.json.

    Returns:
        int: 0, or 4 if some episode stopped on a policy error.

    Raises:
        ConfigError: On a bad config.
        ScenarioValidationError: If validation is on and the scenario fails it.
    """
    config = load_config(config_path)
    seed = config.seed if seed is None else int(seed)
    threads = resolve_threads(threads, config)
    out_dir = _out_dir(out, config)
    scenario = resolve_scenario(config.scenario, config.base_dir)
    if config.validate:
        validation_stage(scenario)
    thetas = config.thetas(scenario.n_hypotheses)

    failures = 0
    with Timer("cmd_run", scenario=scenario.name, thetas=len(thetas), reps=config.reps):
        for theta in thetas:
            summary = run_theta_stage(scenario, config, theta, seed, threads, out_dir / f"theta_{theta}")
            failures += summary.failures
            print(out_dir / f"theta_{theta}" / "summary.csv")

    manifest = write_manifest(
        out_dir, config.to_dict(), seed, "run",
        {"scenario": scenario.name, "thetas": thetas, "failed_episodes": failures},
    )
    print(manifest)
    if failures:
        logger.error(f"{failures} episodes stopped on a policy error; see the per-repetition flags")
        return 4
    return 0


def cmd_params(config_path=None, scenario_ref=None, out=None, seed=None) -> int:
    """Certificate report (R, S, C, gap, bound rows, known-value checks) as params.json."""
    config, scenario = _inputs(config_path, scenario_ref)
    seed = (config.seed if config else 0) if seed is None else int(seed)
    out_dir = _out_dir(out, config)
    bounds = config.bounds if config else {}

    cert = compute_certificates(
        scenario.family, scenario.space, scenario.reward, seed=seed, table=scenario.table
    )
    dims = family_dims(scenario.family, scenario.space)
    report = certificate_report(
        cert, dims, bounds.get("horizons", ()), bounds.get("eta"), bounds.get("delta"), bounds.get("theorems")
    )
    report["scenario"] = scenario.name
    report["dims"] = {"dim_z": dims.dim_z, "dim_w": dims.dim_w, "labels": dims.labels}
    report["known_values"] = checks_to_dict(check_known_values(scenario))

    path = _write_json(out_dir / "params.json", report)
    write_manifest(out_dir, config.to_dict() if config else {"scenario": scenario_ref}, seed, "params")
    print(path)
    return 0


def cmd_validate(config_path=None, scenario_ref=None, out=None) -> int:
    """
    Family validation report as validation.json.

    Returns:
        int: 0 when every cell passes, 3 otherwise.
    """
    config, scenario = _inputs(config_path, scenario_ref)
    out_dir = _out_dir(out, config)
    report = scenario.validate()
    data = {"scenario": scenario.name, **report.to_dict()}
    path = _write_json(out_dir / "validation.json", data)
    print(path)
    if not report.passed:
        logger.error(
            f"scenario {scenario.name!r} fails validation on {len(report.failures)} cells, issues={report.issues}"
        )
        return 3
    return 0


def cmd_bounds(config_path=None, scenario_ref=None, out=None, seed=None) -> int:
    """
    Bound curves over the configured horizons as bounds.csv.

    Raises:
        ZeroGapError: If the gap bound is requested and the gap is not positive.
    """
    config, scenario = _inputs(config_path, scenario_ref)
    seed = (config.seed if config else 0) if seed is None else int(seed)
    out_dir = _out_dir(out, config)
    bounds = config.bounds if config else {"horizons": [100, 1000, 10000]}

    cert = compute_certificates(
        scenario.family, scenario.space, scenario.reward, seed=seed, table=scenario.table
    )
    dims = family_dims(scenario.family, scenario.space)
    rows = bound_rows(
        cert, dims, bounds.get("horizons", ()), bounds.get("eta"), bounds.get("delta"), bounds.get("theorems")
    )
    path = write_table_csv(out_dir / "bounds.csv", BOUNDS_HEADER, ([r[k] for k in BOUNDS_HEADER] for r in rows))
    write_manifest(out_dir, config.to_dict() if config else {"scenario": scenario_ref}, seed, "bounds")
    print(path)
    return 0


def cmd_concentration(config_path, out=None, seed=None) -> int:
    """
    Violation rates over the configured run lengths, one
    concentration_theta_<k>.csv per hypothesis.
    """
    config = load_config(config_path)
    seed = config.seed if seed is None else int(seed)
    out_dir = _out_dir(out, config)
    scenario = resolve_scenario(config.scenario, config.base_dir)
    settings = config.concentration
    nature = make_nature(config.nature.kind, config.nature.params)

    for theta in config.thetas(scenario.n_hypotheses):
        results = concentration_sweep(
            scenario, theta, nature, int(settings["arm"]), [int(t) for t in settings["taus"]],
            float(settings["delta"]), int(settings["reps"]), seed,
        )
        print(write_concentration_csv(out_dir / f"concentration_theta_{theta}.csv", results))
    print(write_manifest(out_dir, config.to_dict(), seed, "concentration", {"scenario": scenario.name}))
    return 0
