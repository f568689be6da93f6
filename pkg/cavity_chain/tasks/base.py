"""Base classes for task handlers."""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np
import structlog

from ..analysis.superness import SupernessSpectrum
from ..config.scenario import ScenarioConfig
from ..config.settings import SimulatorSettings
from ..model.types import ChainSpec
from ..output.table import OutputTable
from ..solvers.oracle import compare_with_transfer
from ..utils.metrics import ORACLE_COMPARISONS, ORACLE_MISMATCHES

logger = structlog.get_logger(__name__)

SPECTRUM_COLUMNS = (
    "detuning",
    "T",
    "R",
    "T_ind",
    "delta_T",
    "rel_superness",
    "saturation_flag",
)


class TaskStatus(Enum):
    """Status of task execution."""

    SUCCESS = "success"
    FAILED = "failed"
    SKIPPED = "skipped"
    MISMATCH = "mismatch"


@dataclass
class TaskResult:
    """Result of task execution."""

    status: TaskStatus
    message: str
    tables: list[OutputTable] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)
    execution_time_seconds: float = 0.0


@dataclass
class TaskContext:
    """Context passed to task handlers."""

    scenario: ScenarioConfig
    settings: SimulatorSettings


def table_name(task: str, series: str | None) -> str:
    return f"{task}-{series}" if series else task


def spectrum_table(name: str, spectrum: SupernessSpectrum) -> OutputTable:
    """One row per grid point in the standard spectrum layout."""
    rows = [
        (
            float(spectrum.detuning[i]),
            float(spectrum.T[i]),
            float(spectrum.R[i]),
            float(spectrum.T_ind[i]),
            float(spectrum.delta_T[i]),
            float(spectrum.relative[i]),
            int(bool(spectrum.saturated[i])),
        )
        for i in range(len(spectrum))
    ]
    return OutputTable(name=name, columns=SPECTRUM_COLUMNS, rows=rows)


class TaskHandler(ABC):
    """Base class for all task handlers."""

    def __init__(self, name: str, description: str) -> None:
        """Initialize task handler.

        Args:
            name: Unique name for this task type
            description: Human-readable description
        """
        self.name = name
        self.description = description

    def can_handle(self, context: TaskContext) -> bool:
        """Determine if this handler can run on the given scenario."""
        return True

    @abstractmethod
    def execute(self, context: TaskContext) -> TaskResult:
        """Execute the task.

        Args:
            context: Task execution context

        Returns:
            Result of task execution
        """

    def _oracle_check(
        self, context: TaskContext, spec: ChainSpec, series: str | None
    ) -> dict[str, Any] | None:
        """Cross-check emitted (T, R) against the direct solver, if enabled.

        Returns:
            Discrepancy summary, or None when the check is disabled
        """
        check = context.scenario.oracle_check
        if not check.enabled:
            return None

        report = compare_with_transfer(
            spec,
            context.scenario.grid(),
            tolerance=check.tolerance,
            epsilon=context.scenario.thresholds.epsilon_t,
            condition_warning=context.settings.condition_warning,
        )
        flagged = int(np.count_nonzero(report.flagged))
        ORACLE_COMPARISONS.inc(int(np.count_nonzero(~report.unavailable)))
        ORACLE_MISMATCHES.inc(flagged)

        if flagged:
            logger.warning(
                "Oracle check failed",
                task=self.name,
                series=series,
                flagged_points=flagged,
                max_rel_T=report.max_T,
                max_rel_R=report.max_R,
            )
        return report.summary()

    @staticmethod
    def _status(checks: dict[str, dict[str, Any]]) -> TaskStatus:
        if any(not summary["passed"] for summary in checks.values()):
            return TaskStatus.MISMATCH
        return TaskStatus.SUCCESS
