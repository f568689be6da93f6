"""Built-in task identifying atom-coupling configurations from reflection."""

from typing import Any

import numpy as np
import structlog

from ...analysis.signatures import classify_configuration, reflection_signatures
from ...analysis.superness import superness_spectrum
from ...model.builders import with_atoms
from ...utils.metrics import POINTS_EVALUATED
from ..base import TaskContext, TaskHandler, TaskResult, spectrum_table, table_name
from ..registry import register_task

logger = structlog.get_logger(__name__)


def _finite_or_none(value: float) -> float | None:
    return value if np.isfinite(value) else None


@register_task("reflection", "Reflection signatures of every atom on/off configuration")
class ReflectionTask(TaskHandler):
    """Signatures, self-classification margins and per-configuration spectra."""

    def can_handle(self, context: TaskContext) -> bool:
        spec = context.scenario.chain_spec()
        return spec.size <= context.settings.signature_cap

    def execute(self, context: TaskContext) -> TaskResult:
        scenario = context.scenario
        grid = scenario.grid()
        thresholds = scenario.limits()
        config = scenario.reflection

        tables = []
        checks: dict[str, dict[str, Any]] = {}
        signatures_out: dict[str, Any] = {}
        for series, base in scenario.series():
            signatures = reflection_signatures(
                base,
                grid,
                cap=context.settings.signature_cap,
                landmarks=config.landmarks,
                thresholds=thresholds,
            )

            for signature in signatures:
                label = f"{series}-{signature.label}" if series else signature.label
                name = table_name(self.name, label)
                spec = with_atoms(base, signature.mask)
                spectrum = superness_spectrum(spec, grid, thresholds)
                tables.append(spectrum_table(name, spectrum))
                POINTS_EVALUATED.labels(task=self.name).inc(grid.points)

                match = classify_configuration(
                    signature.spectrum,
                    signatures,
                    grid=grid,
                    ambiguity_margin=config.ambiguity_margin,
                )
                signatures_out[name] = {
                    "configuration": signature.label,
                    "min_detuning": signature.features.min_detuning,
                    "min_R": signature.features.min_value,
                    "landmarks": {
                        str(x): value
                        for x, value in signature.features.landmarks.items()
                    },
                    "classified_as": match.label,
                    "margin": _finite_or_none(match.margin),
                    "ambiguous": match.ambiguous,
                }

                summary = self._oracle_check(context, spec, label)
                if summary is not None:
                    checks[name] = summary

        details: dict[str, Any] = {"signatures": signatures_out}
        if checks:
            details["oracle"] = checks

        return TaskResult(
            status=self._status(checks),
            message=f"Generated {len(signatures_out)} configuration signatures",
            tables=tables,
            details=details,
        )
