"""Built-in task scanning uniform chains over the number of subsystems."""

import structlog

from ...analysis.superness import scan_chain_length
from ...utils.metrics import POINTS_EVALUATED
from ..base import OutputTable, TaskContext, TaskHandler, TaskResult, TaskStatus
from ..registry import register_task

logger = structlog.get_logger(__name__)

LENGTH_SCAN_COLUMNS = (
    "N",
    "peak_delta_T",
    "peak_detuning",
    "rel_superness_at_peak",
    "max_rel_superness",
)


def _value(x: float | None) -> float:
    return float("nan") if x is None else x


@register_task("length_scan", "Peak superness versus chain size")
class LengthScanTask(TaskHandler):
    """Uniform chains replicating the scenario's first subsystem."""

    def execute(self, context: TaskContext) -> TaskResult:
        scenario = context.scenario
        config = scenario.length_scan
        sub = scenario.chain_spec().subsystems[0]

        entries = scan_chain_length(
            sub, config.length, config.n_range, scenario.grid(), scenario.limits()
        )
        POINTS_EVALUATED.labels(task=self.name).inc(len(entries) * scenario.scan.points)

        table = OutputTable(
            name=self.name,
            columns=LENGTH_SCAN_COLUMNS,
            rows=[
                (
                    entry.n,
                    entry.peak_delta_T,
                    entry.peak_detuning,
                    _value(entry.relative_at_peak),
                    _value(entry.max_relative),
                )
                for entry in entries
            ],
        )

        return TaskResult(
            status=TaskStatus.SUCCESS,
            message=f"Scanned {len(entries)} chain sizes",
            tables=[table],
            details={
                "length": config.length,
                "n_range": config.n_range,
                "edge_peaks": [entry.n for entry in entries if entry.peak_at_edge],
            },
        )
