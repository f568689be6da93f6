"""Command-line entry point for the cavity chain simulator."""

import argparse
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import structlog
from pydantic import ValidationError

from . import __version__
from .config import (
    ScenarioConfig,
    SimulatorSettings,
    get_preset,
    parse_scenario,
    presets,
)
from .model.errors import (
    PresetNotFoundError,
    ScenarioParseError,
    ScenarioValidationError,
)
from .tasks import ExitStatus, run
from .utils import setup_logging

logger = structlog.get_logger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cavity-chain",
        description="Steady-state spectra of fiber-coupled atom-microcavity chains",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--log-level", help="Override CAVITY_CHAIN_LOG_LEVEL")
    parser.add_argument(
        "--log-format",
        choices=["json", "plain"],
        help="Override CAVITY_CHAIN_LOG_FORMAT",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser("simulate", help="Run a scenario file or preset")
    source = simulate.add_mutually_exclusive_group(required=True)
    source.add_argument("scenario", nargs="?", type=Path, help="Scenario JSON file")
    source.add_argument("--preset", help="Bundled scenario name (see 'presets')")
    simulate.add_argument("--out", help="Output directory")
    simulate.add_argument(
        "--oracle-check",
        action="store_true",
        help="Cross-check every (T, R) point against the direct solver",
    )
    simulate.add_argument(
        "--tolerance", type=float, help="Relative tolerance of the oracle check"
    )
    simulate.add_argument("--format", choices=["csv", "json"], dest="fmt")
    simulate.add_argument(
        "--metrics-file", help="Write Prometheus metrics to this file after the run"
    )

    validate = commands.add_parser("validate", help="Parse and validate a scenario")
    validate.add_argument("scenario", type=Path, help="Scenario JSON file")

    commands.add_parser("presets", help="List bundled scenarios")
    return parser


def load_scenario(path: Path) -> ScenarioConfig:
    """Read and parse a scenario file.

    Raises:
        OSError: If the file cannot be read
        ScenarioParseError: Malformed document
        ScenarioValidationError: Model invariants violated
    """
    return parse_scenario(path.read_text(encoding="utf-8"))


def apply_overrides(
    scenario: ScenarioConfig, args: argparse.Namespace, settings: SimulatorSettings
) -> ScenarioConfig:
    """Apply command-line flags on top of the scenario document."""
    update: dict[str, Any] = {}
    if args.out:
        update["output"] = scenario.output.model_copy(update={"path": args.out})
    if args.fmt:
        output = update.get("output", scenario.output)
        update["output"] = output.model_copy(update={"format": args.fmt})
    if args.oracle_check or args.tolerance is not None:
        check: dict[str, object] = {"enabled": True}
        if args.tolerance is not None:
            check["tolerance"] = args.tolerance
        elif not scenario.oracle_check.enabled:
            check["tolerance"] = settings.oracle_tolerance
        update["oracle_check"] = scenario.oracle_check.model_copy(update=check)
    return scenario.model_copy(update=update) if update else scenario


def _simulate(args: argparse.Namespace, settings: SimulatorSettings) -> int:
    try:
        if args.preset:
            scenario = get_preset(args.preset)
        else:
            scenario = load_scenario(args.scenario)
    except PresetNotFoundError as e:
        logger.error("Unknown preset", preset=e.name, available=e.available)
        return ExitStatus.VALIDATION_FAILURE
    except (ScenarioParseError, ScenarioValidationError) as e:
        logger.error("Invalid scenario", error=str(e))
        return ExitStatus.VALIDATION_FAILURE
    except OSError as e:
        logger.error("Cannot read scenario", path=str(args.scenario), error=str(e))
        return ExitStatus.IO_FAILURE

    if args.tolerance is not None and not 0.0 < args.tolerance <= 1.0:
        logger.error("Invalid tolerance", tolerance=args.tolerance)
        return ExitStatus.VALIDATION_FAILURE

    if args.metrics_file:
        settings.metrics_enabled = True
        settings.metrics_file = args.metrics_file

    scenario = apply_overrides(scenario, args, settings)
    logger.info(
        "Starting simulation",
        scenario=scenario.name,
        version=__version__,
        tasks=[task.value for task in scenario.tasks],
        output=scenario.output.path,
    )
    return int(run(scenario, settings))


def _validate(args: argparse.Namespace) -> int:
    try:
        scenario = load_scenario(args.scenario)
    except ScenarioValidationError as e:
        for violation in e.violations:
            logger.error(
                "Invalid scenario", field=violation.path, problem=violation.message
            )
        return ExitStatus.VALIDATION_FAILURE
    except ScenarioParseError as e:
        logger.error("Invalid scenario", error=str(e), field=e.field_path, line=e.line)
        return ExitStatus.VALIDATION_FAILURE
    except OSError as e:
        logger.error("Cannot read scenario", path=str(args.scenario), error=str(e))
        return ExitStatus.IO_FAILURE

    logger.info("Scenario is valid", scenario=scenario.name)
    return ExitStatus.OK


def _presets() -> int:
    for info in presets():
        print(f"{info.name}\t{info.description}")
    return ExitStatus.OK


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line and return the process exit status."""
    args = build_parser().parse_args(argv)

    try:
        settings = SimulatorSettings()
        if args.log_level:
            settings.log_level = args.log_level
        if args.log_format:
            settings.log_format = args.log_format
    except ValidationError as e:
        print(f"cavity-chain: invalid settings: {e}", file=sys.stderr)
        return ExitStatus.VALIDATION_FAILURE

    setup_logging(settings.log_level, settings.log_format)

    if args.command == "simulate":
        return _simulate(args, settings)
    if args.command == "validate":
        return _validate(args)
    return _presets()


if __name__ == "__main__":
    sys.exit(main())
