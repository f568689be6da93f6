"""Built-in task writing transmission and reflection spectra."""

from typing import Any

import numpy as np
import structlog

from ...analysis.superness import superness_spectrum
from ...utils.metrics import OPAQUE_FALLBACKS, POINTS_EVALUATED
from ..base import TaskContext, TaskHandler, TaskResult, spectrum_table, table_name
from ..registry import register_task

logger = structlog.get_logger(__name__)


@register_task("spectrum", "Transmission and reflection over the scan grid")
class SpectrumTask(TaskHandler):
    """One spectrum table per length variant."""

    def execute(self, context: TaskContext) -> TaskResult:
        scenario = context.scenario
        grid = scenario.grid()
        thresholds = scenario.limits()

        tables = []
        checks: dict[str, dict[str, Any]] = {}
        saturated: dict[str, int] = {}
        for series, spec in scenario.series():
            name = table_name(self.name, series)
            spectrum = superness_spectrum(spec, grid, thresholds)
            tables.append(spectrum_table(name, spectrum))

            POINTS_EVALUATED.labels(task=self.name).inc(len(spectrum))
            OPAQUE_FALLBACKS.inc(int(np.count_nonzero(spectrum.via_oracle)))
            saturated[name] = int(np.count_nonzero(spectrum.saturated))

            summary = self._oracle_check(context, spec, series)
            if summary is not None:
                checks[name] = summary

        details: dict[str, Any] = {"saturated_points": saturated}
        if checks:
            details["oracle"] = checks

        return TaskResult(
            status=self._status(checks),
            message=f"Computed {len(tables)} spectra",
            tables=tables,
            details=details,
        )
