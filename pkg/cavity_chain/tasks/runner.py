"""Scenario runner: executes tasks in order and writes their outputs."""

from enum import IntEnum
from typing import Any

import structlog

from .. import __version__
from ..config.scenario import ScenarioConfig, validate_scenario
from ..config.settings import SimulatorSettings
from ..output.writer import write_outputs
from ..utils.metrics import write_metrics
from .base import OutputTable, TaskContext, TaskResult, TaskStatus
from .registry import get_task_registry

logger = structlog.get_logger(__name__)


class ExitStatus(IntEnum):
    OK = 0
    VALIDATION_FAILURE = 2
    ORACLE_MISMATCH = 3
    IO_FAILURE = 4


def _metadata(
    scenario: ScenarioConfig,
    settings: SimulatorSettings,
    results: dict[str, TaskResult],
) -> dict[str, Any]:
    return {
        "version": __version__,
        "scenario": scenario.metadata(),
        "settings": {
            "condition_warning": settings.condition_warning,
            "pathway_cap": settings.pathway_cap,
            "signature_cap": settings.signature_cap,
        },
        "tasks": {
            name: {
                "status": result.status.value,
                "message": result.message,
                "details": result.details,
            }
            for name, result in results.items()
        },
    }


def _exit_status(results: dict[str, TaskResult]) -> ExitStatus:
    statuses = {result.status for result in results.values()}
    if statuses & {TaskStatus.FAILED, TaskStatus.SKIPPED}:
        return ExitStatus.VALIDATION_FAILURE
    if TaskStatus.MISMATCH in statuses:
        return ExitStatus.ORACLE_MISMATCH
    return ExitStatus.OK


def run(
    scenario: ScenarioConfig, settings: SimulatorSettings | None = None
) -> ExitStatus:
    """Execute every task of a scenario and write the outputs.

    Tasks run sequentially in scenario order. Outputs of completed tasks are
    written even when another task fails or the oracle check flags points.

    Returns:
        0 success, 2 validation or task failure, 3 oracle mismatch, 4 I/O failure
    """
    settings = settings or SimulatorSettings()

    report = validate_scenario(scenario)
    if not report.ok:
        for violation in report.violations:
            logger.error(
                "Invalid scenario", field=violation.path, problem=violation.message
            )
        return ExitStatus.VALIDATION_FAILURE

    # Import built-in tasks to register them
    from . import builtin  # noqa: F401

    registry = get_task_registry()
    context = TaskContext(scenario=scenario, settings=settings)

    results: dict[str, TaskResult] = {}
    tables: list[OutputTable] = []
    for task in scenario.tasks:
        result = registry.execute_task(task.value, context)
        results[task.value] = result
        tables.extend(result.tables)

    status = _exit_status(results)

    try:
        write_outputs(
            scenario.output.path,
            scenario.name,
            tables,
            _metadata(scenario, settings, results),
            fmt=scenario.output.format,
        )
        if settings.metrics_enabled and settings.metrics_file:
            write_metrics(settings.metrics_file)
    except OSError as e:
        logger.error("Failed to write outputs", path=scenario.output.path, error=str(e))
        return ExitStatus.IO_FAILURE

    logger.info(
        "Scenario finished",
        scenario=scenario.name,
        exit_status=int(status),
        tables=len(tables),
    )
    return status
