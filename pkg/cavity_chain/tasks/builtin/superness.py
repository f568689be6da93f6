"""Built-in task quantifying supermodes through the superness delta_T."""

from typing import Any

import numpy as np
import structlog

from ...analysis.pathways import constructive_condition
from ...analysis.peaks import find_superness_peaks
from ...analysis.superness import superness_at, superness_spectrum
from ...model.errors import UndefinedPhaseError
from ...model.types import ChainSpec, Thresholds
from ...solvers.resonator import scattering_amplitudes
from ...utils.metrics import OPAQUE_FALLBACKS, POINTS_EVALUATED
from ..base import TaskContext, TaskHandler, TaskResult, spectrum_table, table_name
from ..registry import register_task

logger = structlog.get_logger(__name__)


def _peak_diagnostics(spec: ChainSpec, probe: float) -> dict[str, Any]:
    """Per-segment interference mismatch and per-subsystem |t|/|r| at a probe."""
    amplitudes = [scattering_amplitudes(sub, probe) for sub in spec.subsystems]
    mismatches: list[float | None] = []
    for k, phi in enumerate(spec.phases):
        try:
            mismatches.append(
                constructive_condition(
                    complex(amplitudes[k + 1].r),
                    complex(amplitudes[k].r_reverse),
                    float(phi),
                )
            )
        except UndefinedPhaseError:
            mismatches.append(None)

    ratios = [
        float(abs(complex(a.t)) / abs(complex(a.r))) if complex(a.r) != 0 else None
        for a in amplitudes
    ]
    return {"constructive_mismatch": mismatches, "t_over_r": ratios}


@register_task("superness", "Superness delta_T = T - T_ind and its peaks")
class SupernessTask(TaskHandler):
    """Superness spectra, refined peaks and peak diagnostics per variant."""

    def execute(self, context: TaskContext) -> TaskResult:
        scenario = context.scenario
        grid = scenario.grid()
        thresholds: Thresholds = scenario.limits()

        tables = []
        checks: dict[str, dict[str, Any]] = {}
        peaks: dict[str, Any] = {}
        for series, spec in scenario.series():
            name = table_name(self.name, series)
            spectrum = superness_spectrum(spec, grid, thresholds)
            tables.append(spectrum_table(name, spectrum))
            POINTS_EVALUATED.labels(task=self.name).inc(len(spectrum))
            OPAQUE_FALLBACKS.inc(int(np.count_nonzero(spectrum.via_oracle)))

            def evaluate(probe: float, chain: ChainSpec = spec) -> float:
                return superness_at(chain, probe, thresholds)[0]

            found = find_superness_peaks(spectrum.detuning, spectrum.delta_T, evaluate)
            best = max(found, key=lambda peak: peak.value)
            peaks[name] = {
                "peak_detuning": best.detuning,
                "peak_delta_T": best.value,
                "peak_at_edge": best.at_edge,
                "local_peaks": [
                    {
                        "detuning": peak.detuning,
                        "delta_T": peak.value,
                        "at_edge": peak.at_edge,
                    }
                    for peak in found
                ],
                **_peak_diagnostics(spec, best.detuning),
            }
            logger.info(
                "Superness peak",
                series=series,
                detuning=best.detuning,
                delta_T=best.value,
            )

            summary = self._oracle_check(context, spec, series)
            if summary is not None:
                checks[name] = summary

        details: dict[str, Any] = {"peaks": peaks}
        if checks:
            details["oracle"] = checks

        return TaskResult(
            status=self._status(checks),
            message=f"Computed {len(tables)} superness spectra",
            tables=tables,
            details=details,
        )
