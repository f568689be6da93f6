"""Built-in task decomposing transmission into reflection pathways."""

from typing import Any

import structlog

from ...analysis.pathways import pathways
from ...analysis.superness import peak_superness
from ...solvers.chain import compose, response
from ..base import (
    OutputTable,
    TaskContext,
    TaskHandler,
    TaskResult,
    TaskStatus,
    table_name,
)
from ..registry import register_task

logger = structlog.get_logger(__name__)

PATHWAY_COLUMNS = ("bounces", "descriptor", "amplitude_re", "amplitude_im", "magnitude")


@register_task("pathways", "Truncated multiple-reflection pathway sums")
class PathwaysTask(TaskHandler):
    """Pathways at a fixed probe, or at each variant's superness peak."""

    def execute(self, context: TaskContext) -> TaskResult:
        scenario = context.scenario
        config = scenario.pathways
        thresholds = scenario.limits()

        tables = []
        sums: dict[str, Any] = {}
        for series, spec in scenario.series():
            name = table_name(self.name, series)
            probe = config.probe
            if probe is None:
                probe = peak_superness(spec, scenario.grid(), thresholds).detuning

            # t is reciprocal, so both drives share the left-to-right walk
            found, total = pathways(
                spec, probe, config.max_bounces, cap=context.settings.pathway_cap
            )
            exact = complex(
                response(compose(spec, probe, thresholds.epsilon_t), spec.drive).t_total
            )

            tables.append(
                OutputTable(
                    name=name,
                    columns=PATHWAY_COLUMNS,
                    rows=[
                        (
                            p.bounces,
                            p.descriptor,
                            p.amplitude.real,
                            p.amplitude.imag,
                            abs(p.amplitude),
                        )
                        for p in found
                    ],
                )
            )
            sums[name] = {
                "probe": probe,
                "max_bounces": config.max_bounces,
                "pathways": len(found),
                "truncated_sum": [total.real, total.imag],
                "t_total": [exact.real, exact.imag],
                "abs_error": abs(total - exact),
            }
            logger.info(
                "Pathway sum",
                series=series,
                probe=probe,
                pathways=len(found),
                abs_error=abs(total - exact),
            )

        return TaskResult(
            status=TaskStatus.SUCCESS,
            message=f"Enumerated pathways for {len(sums)} chains",
            tables=tables,
            details={"sums": sums},
        )
