"""
Pipeline package: experiment configuration, the shared stages and the CLI
commands run, params, validate, bounds and concentration.
"""

from .config import ExperimentConfig, PolicyConfig, load_config, parse_config, resolve_threads
from .orchestrator import cmd_bounds, cmd_concentration, cmd_params, cmd_run, cmd_validate
from .stages import resolve_scenario, run_theta_stage, validation_stage

__all__ = [
    # config.py
    "ExperimentConfig",
    "PolicyConfig",
    "load_config",
    "parse_config",
    "resolve_threads",
    # orchestrator.py
    "cmd_bounds",
    "cmd_concentration",
    "cmd_params",
    "cmd_run",
    "cmd_validate",
    # stages.py
    "resolve_scenario",
    "run_theta_stage",
    "validation_stage",
]
