"""
Pipeline stages shared by the commands: resolving and validating a
scenario, and running and writing the episodes of one hypothesis.
"""

from __future__ import annotations

from pathlib import Path

from src.logger.logging_config import get_logger
from src.logger.timing import Timer
from src.pipeline.config import ExperimentConfig
from src.scenarios import SCENARIO_BUILDERS, Scenario, build_scenario, load_scenario, scenario_from_document
from src.sim import EpisodeSpec, MonteCarloSummary, monte_carlo, write_summary_csv, write_trace_csv

logger = get_logger(__name__)


def resolve_scenario(ref: str | dict, base_dir: str | Path = ".") -> Scenario:
    """
    A scenario from a JSON path, an inline document or a bare builder name.

    Relative paths resolve against `base_dir` first, then the working
    directory.

    Raises:
        ConfigError: If the reference names nothing loadable.
    """
    if isinstance(ref, dict):
        return scenario_from_document(ref)
    candidate = Path(base_dir) / ref
    if candidate.exists():
        return load_scenario(candidate)
    if not Path(ref).exists() and ref in SCENARIO_BUILDERS:
        return build_scenario(ref)
    return load_scenario(ref)


def validation_stage(scenario: Scenario) -> None:
    """
    Raises:
        ScenarioValidationError: If the family fails its checks.
    """
    logger.info(f"Validating scenario {scenario.name!r}")
    scenario.require_valid()


def run_theta_stage(
    scenario: Scenario,
    config: ExperimentConfig,
    theta: int,
    seed: int,
    threads: int,
    out_dir: Path,
) -> MonteCarloSummary:
    """
    Run the configured repetitions for one true hypothesis and write
    rep_<r>.csv per repetition and summary.csv under `out_dir`.
    """
    spec = EpisodeSpec(
        scenario=scenario,
        agent=config.agent.kind,
        nature=config.nature.kind,
        theta=theta,
        horizon=config.horizon,
        agent_params=config.agent.params,
        nature_params=config.nature.params,
    )
    with Timer("run_theta_stage", scenario=scenario.name, theta=theta):
        summary = monte_carlo(spec, config.reps, seed, threads)

    out_dir.mkdir(parents=True, exist_ok=True)
    for r, (trace, regret) in enumerate(zip(summary.traces, summary.regrets)):
        write_trace_csv(out_dir / f"rep_{r}.csv", trace, regret)
    write_summary_csv(out_dir / "summary.csv", summary)
    logger.info(f"Saved traces and summary: {out_dir}")
    return summary
