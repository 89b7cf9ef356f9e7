"""
Imprecise bandits: batch front end for simulations and certificates.

Commands: run, params, validate, bounds, concentration. Diagnostics go to
stderr; stdout carries only the paths of written files.

Exit codes:
    0  ok
    1  unexpected failure
    2  config or schema error
    3  scenario validation failure
    4  runtime policy error
    5  bound not applicable (gap bound with a zero gap)
"""

import argparse
import sys

from src.errors import (
    BanditError,
    ConfigError,
    EmptyConfidenceSetError,
    HypothesisEliminatedError,
    IncompatibleMeanError,
    OutcomeOutsideBodyError,
    PolicyProtocolError,
    ScenarioValidationError,
    SingularMatrixError,
    ZeroGapError,
)
from src.logger.logging_config import get_logger, setup_logging
from src.pipeline.orchestrator import cmd_bounds, cmd_concentration, cmd_params, cmd_run, cmd_validate

COMMANDS = ("run", "params", "validate", "bounds", "concentration")

POLICY_ERRORS = (
    PolicyProtocolError,
    HypothesisEliminatedError,
    EmptyConfidenceSetError,
    OutcomeOutsideBodyError,
    SingularMatrixError,
    IncompatibleMeanError,
)


def parse_args(argv=None):
    """Parse command line arguments."""
    parser = argparse.ArgumentParser(
        description="Imprecise bandits: simulations and certificates for credal-set bandit problems"
    )
    parser.add_argument("command", choices=COMMANDS, help="Command to run")
    parser.add_argument("--config", "-c", help="Experiment config JSON")
    parser.add_argument("--scenario", "-s", help="Scenario JSON path or builder name (params, validate, bounds)")
    parser.add_argument("--out", "-o", help="Output directory (default: the config's 'out')")
    parser.add_argument("--seed", type=int, help="Base seed, overrides the config")
    parser.add_argument("--threads", "-j", type=int, help="Worker processes (default: $IB_THREADS, else 1)")
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default="INFO",
        help="Console log level (default: INFO)",
    )
    return parser.parse_args(argv)


def exit_code(exc: BaseException) -> int:
    match exc:
        case ConfigError():
            return 2
        case ScenarioValidationError():
            return 3
        case ZeroGapError():
            return 5
        case _ if isinstance(exc, POLICY_ERRORS):
            return 4
        case _:
            return 1


def dispatch(args) -> int:
    if args.command in ("run", "concentration") and not args.config:
        raise ConfigError(f"{args.command} needs --config")
    match args.command:
        case "run":
            return cmd_run(args.config, args.out, args.seed, args.threads)
        case "params":
            return cmd_params(args.config, args.scenario, args.out, args.seed)
        case "validate":
            return cmd_validate(args.config, args.scenario, args.out)
        case "bounds":
            return cmd_bounds(args.config, args.scenario, args.out, args.seed)
        case "concentration":
            return cmd_concentration(args.config, args.out, args.seed)


def main(argv=None) -> int:
    """
    Main entry point.

    Parses command line arguments, runs the command and maps failures onto
    the exit codes listed in the module docstring.
    """
    args = parse_args(argv)
    setup_logging(args.log_level)
    logger = get_logger(__name__)
    logger.info(f"{args.command} started")

    try:
        code = dispatch(args)
    except BanditError as exc:
        code = exit_code(exc)
        logger.error(f"{args.command} failed ({type(exc).__name__}): {exc}", exc_info=True)
    except Exception:
        code = 1
        logger.error(f"{args.command} failed", exc_info=True)
    else:
        logger.info(f"{args.command} finished with exit code {code}")
    return code


if __name__ == "__main__":
    sys.exit(main())
