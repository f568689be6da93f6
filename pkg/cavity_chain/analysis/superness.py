"""Supermode quantification: superness spectra and chain-length trends."""

from collections.abc import Iterator, Sequence
from dataclasses import dataclass

import numpy as np
import structlog
from numpy.typing import NDArray
from scipy.signal import find_peaks

from ..model.builders import uniform_chain
from ..model.errors import InvalidChainError
from ..model.types import ChainSpec, ScanGrid, SubsystemParams, Thresholds
from ..solvers.resonator import FloatArray, scattering_amplitudes
from .peaks import Peak, global_peak
from .spectrum import saturation_flags, transport_spectrum

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class SupernessPoint:
    """Superness at one probe detuning; ``relative`` is None where T < epsilon_T."""

    detuning: float
    T: float
    R: float
    T_ind: float
    delta_T: float
    relative: float | None
    saturated: bool
    max_excitation: float


@dataclass(frozen=True)
class SupernessSpectrum(Sequence[SupernessPoint]):
    """Column view of a superness scan; iterates as SupernessPoints."""

    detuning: FloatArray
    T: FloatArray
    R: FloatArray
    T_ind: FloatArray
    delta_T: FloatArray
    relative: FloatArray
    saturated: NDArray[np.bool_]
    max_excitation: FloatArray
    via_oracle: NDArray[np.bool_]

    def __len__(self) -> int:
        return int(self.detuning.size)

    def __getitem__(self, index: int) -> SupernessPoint:  # type: ignore[override]
        relative = float(self.relative[index])
        return SupernessPoint(
            detuning=float(self.detuning[index]),
            T=float(self.T[index]),
            R=float(self.R[index]),
            T_ind=float(self.T_ind[index]),
            delta_T=float(self.delta_T[index]),
            relative=relative if np.isfinite(relative) else None,
            saturated=bool(self.saturated[index]),
            max_excitation=float(self.max_excitation[index]),
        )

    def __iter__(self) -> Iterator[SupernessPoint]:
        return (self[i] for i in range(len(self)))

    @property
    def undefined(self) -> NDArray[np.bool_]:
        return ~np.isfinite(self.relative)


@dataclass(frozen=True)
class LengthScanEntry:
    """Extrema of the superness spectrum for a uniform chain of ``n`` subsystems."""

    n: int
    peak_delta_T: float
    peak_detuning: float
    relative_at_peak: float | None
    max_relative: float | None
    peak_at_edge: bool = False


@dataclass(frozen=True)
class DecouplingDetunings:
    """Local minima of |t| and |r| of a single subsystem."""

    transmission_minima: list[float]
    reflection_minima: list[float]


def relative_superness(
    delta_T: FloatArray, T: FloatArray, epsilon_T: float = 1e-9
) -> FloatArray:
    """delta_T / T, NaN wherever T < epsilon_T."""
    T = np.asarray(T, dtype=np.float64)
    out = np.full(T.shape, np.nan)
    defined = T >= epsilon_T
    out[defined] = np.asarray(delta_T)[defined] / T[defined]
    return out


def superness_spectrum(
    spec: ChainSpec, grid: ScanGrid, thresholds: Thresholds | None = None
) -> SupernessSpectrum:
    """T, T_ind, delta_T = T - T_ind and delta_T / T over the grid.

    Gated points fall back to the direct solver.
    """
    thresholds = thresholds or Thresholds()
    spectrum = transport_spectrum(spec, grid.values(), thresholds)
    delta_T = spectrum.T - spectrum.T_ind

    logger.debug(
        "Computed superness spectrum",
        subsystems=spec.size,
        points=grid.points,
        max_delta_T=float(np.max(delta_T)),
    )

    return SupernessSpectrum(
        detuning=spectrum.detuning,
        T=spectrum.T,
        R=spectrum.R,
        T_ind=spectrum.T_ind,
        delta_T=delta_T,
        relative=relative_superness(delta_T, spectrum.T, thresholds.epsilon_T),
        saturated=saturation_flags(spectrum.max_excitation, thresholds),
        max_excitation=spectrum.max_excitation,
        via_oracle=spectrum.via_oracle,
    )


def superness_at(
    spec: ChainSpec, probe: float, thresholds: Thresholds | None = None
) -> tuple[float, float]:
    """(delta_T, T) at a single probe detuning."""
    spectrum = transport_spectrum(spec, probe, thresholds)
    return float(spectrum.T[0] - spectrum.T_ind[0]), float(spectrum.T[0])


def peak_superness(
    spec: ChainSpec,
    grid: ScanGrid,
    thresholds: Thresholds | None = None,
    window: tuple[float, float] | None = None,
    interior_only: bool = False,
) -> Peak:
    """Refined global maximum of delta_T, optionally within a detuning window.

    The window edges count as grid edges: with ``interior_only`` a maximum
    sitting on one is rejected.

    Raises:
        ValueError: If the window is empty, or no interior maximum exists and
            ``interior_only`` is set
    """
    spectrum = superness_spectrum(spec, grid, thresholds)
    mask = grid.window(*window) if window else np.ones(len(spectrum), dtype=bool)
    if not mask.any():
        raise ValueError(f"window {window} contains no grid points")

    def evaluate(probe: float) -> float:
        return superness_at(spec, probe, thresholds)[0]

    return global_peak(
        spectrum.detuning[mask], spectrum.delta_T[mask], evaluate, interior_only
    )


def scan_chain_length(
    sub: SubsystemParams,
    length: float,
    n_range: Sequence[int],
    grid: ScanGrid,
    thresholds: Thresholds | None = None,
) -> list[LengthScanEntry]:
    """Peak superness and relative superness for uniform chains of each size.

    Args:
        sub: Subsystem replicated along every chain
        length: Segment length in units of lambda
        n_range: Chain sizes, each >= 2
        grid: Probe detunings searched for the peak
        thresholds: Numerical gates

    Returns:
        One entry per chain size, in the order given

    Raises:
        InvalidChainError: If n_range is empty or contains a size below 2
    """
    if not n_range:
        raise InvalidChainError("chain-length scan needs at least one chain size")
    if any(n < 2 for n in n_range):
        raise InvalidChainError(
            f"chain-length scan sizes must be >= 2, got {list(n_range)}"
        )

    thresholds = thresholds or Thresholds()
    entries: list[LengthScanEntry] = []
    for n in n_range:
        spec = uniform_chain(n, sub, length)
        spectrum = superness_spectrum(spec, grid, thresholds)

        def evaluate(probe: float, chain: ChainSpec = spec) -> float:
            return superness_at(chain, probe, thresholds)[0]

        peak = global_peak(spectrum.detuning, spectrum.delta_T, evaluate)
        delta_T, T = superness_at(spec, peak.detuning, thresholds)
        relative = delta_T / T if T >= thresholds.epsilon_T else None
        defined = spectrum.relative[np.isfinite(spectrum.relative)]

        entries.append(
            LengthScanEntry(
                n=n,
                peak_delta_T=peak.value,
                peak_detuning=peak.detuning,
                relative_at_peak=relative,
                max_relative=float(np.max(defined)) if defined.size else None,
                peak_at_edge=peak.at_edge,
            )
        )
        if peak.at_edge:
            logger.warning(
                "Peak superness on the scan boundary", n=n, detuning=peak.detuning
            )
        logger.info(
            "Evaluated chain length",
            n=n,
            peak_delta_T=peak.value,
            peak_detuning=peak.detuning,
        )

    return entries


def decoupling_detunings(sub: SubsystemParams, grid: ScanGrid) -> DecouplingDetunings:
    """Detunings where a single subsystem's |t| or |r| has a local minimum.

    Near these points the backcoupling, or the forward coupling, between
    neighbours vanishes and the chain behaves like independent cavities.
    """
    probes = grid.values()
    resp = scattering_amplitudes(sub, probes)

    def minima(values: FloatArray) -> list[float]:
        indices, _ = find_peaks(-values)
        return [float(probes[i]) for i in indices]

    return DecouplingDetunings(
        transmission_minima=minima(np.abs(resp.t)),
        reflection_minima=minima(np.abs(resp.r)),
    )
