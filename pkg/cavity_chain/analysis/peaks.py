"""Local maxima on uniform grids, refined by bounded scalar search."""

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
import structlog
from numpy.typing import ArrayLike
from scipy.optimize import minimize_scalar
from scipy.signal import find_peaks

logger = structlog.get_logger(__name__)

REFINE_XATOL = 1e-6


@dataclass(frozen=True)
class Peak:
    """A refined maximum; ``index`` is the nearest grid point.

    ``at_edge`` marks a maximum on the first or last grid point, which may
    only be the rising flank of a peak outside the grid.
    """

    detuning: float
    value: float
    index: int
    at_edge: bool = False


def refine_peak(
    evaluate: Callable[[float], float],
    x: float,
    value: float,
    low: float,
    high: float,
) -> tuple[float, float]:
    """Bounded search for the maximum of ``evaluate`` on [low, high].

    The grid estimate is kept if the search does no better.
    """
    if high <= low:
        return x, value

    result = minimize_scalar(
        lambda v: -evaluate(float(v)),
        bounds=(low, high),
        method="bounded",
        options={"xatol": REFINE_XATOL},
    )
    refined = -float(result.fun)
    if result.success and refined > value:
        return float(result.x), refined
    return x, value


def find_superness_peaks(
    detuning: ArrayLike,
    values: ArrayLike,
    evaluate: Callable[[float], float] | None = None,
    prominence: float | None = None,
) -> list[Peak]:
    """Grid local maxima, optionally refined against ``evaluate``.

    Undefined values (NaN) are never reported as peaks. A global maximum at
    either end of the grid is included with ``at_edge`` set.
    """
    x = np.asarray(detuning, dtype=np.float64)
    y = np.asarray(values, dtype=np.float64)
    if x.size == 0:
        return []

    filled = np.where(np.isfinite(y), y, -np.inf)
    indices, _ = find_peaks(filled, prominence=prominence)
    candidates = [int(i) for i in indices]

    top = int(np.argmax(filled))
    if top in (0, x.size - 1) and np.isfinite(filled[top]) and top not in candidates:
        candidates.append(top)

    step = float(x[1] - x[0]) if x.size > 1 else 0.0
    peaks: list[Peak] = []
    for index in sorted(candidates):
        position, value = float(x[index]), float(y[index])
        if evaluate is not None and step > 0:
            low = max(float(x[0]), position - step)
            high = min(float(x[-1]), position + step)
            position, value = refine_peak(evaluate, position, value, low, high)
        edge = index in (0, x.size - 1)
        peaks.append(Peak(detuning=position, value=value, index=index, at_edge=edge))

    logger.debug("Located peaks", count=len(peaks), refined=evaluate is not None)
    return peaks


def global_peak(
    detuning: ArrayLike,
    values: ArrayLike,
    evaluate: Callable[[float], float] | None = None,
    interior_only: bool = False,
) -> Peak:
    """Largest refined maximum over the grid.

    With ``interior_only`` a maximum on either end of the grid is not
    accepted, and ValueError is raised when no interior maximum exists.
    """
    peaks = find_superness_peaks(detuning, values, evaluate)
    if interior_only:
        peaks = [peak for peak in peaks if not peak.at_edge]
    if not peaks:
        kind = "interior maximum" if interior_only else "finite values"
        raise ValueError(f"no {kind} to search for a peak")
    return max(peaks, key=lambda peak: (peak.value, -peak.index))
