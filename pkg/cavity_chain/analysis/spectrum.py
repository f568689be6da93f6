"""Transmission and reflection spectra with direct-solve fallback."""

from dataclasses import dataclass

import numpy as np
import structlog
from numpy.typing import ArrayLike, NDArray

from ..model.errors import DegenerateChainError
from ..model.types import ChainSpec, Thresholds
from ..solvers.chain import (
    cavity_fields,
    compose,
    independent_transmission,
    opaque_mask,
    response,
    subsystem_responses,
)
from ..solvers.oracle import drive_for, solve_full
from ..solvers.resonator import FloatArray

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class TransportSpectrum:
    """T, R and diagnostics at every probe detuning of a scan.

    ``via_oracle`` marks points evaluated by the direct solver because the
    transfer-matrix path was gated.
    """

    detuning: FloatArray
    T: FloatArray
    R: FloatArray
    T_ind: FloatArray
    max_excitation: FloatArray
    via_oracle: NDArray[np.bool_]

    def __len__(self) -> int:
        return int(self.detuning.size)


def transport_spectrum(
    spec: ChainSpec, probes: ArrayLike, thresholds: Thresholds | None = None
) -> TransportSpectrum:
    """Evaluate the chain at each probe detuning.

    Points that fail the opacity gate, or where the composite matrix is
    degenerate, are solved directly. Excitations are per unit input flux.
    """
    thresholds = thresholds or Thresholds()
    epsilon = thresholds.epsilon_t
    detuning = np.atleast_1d(np.asarray(probes, dtype=np.float64))

    responses = subsystem_responses(spec, detuning)
    T_ind = independent_transmission(spec, detuning, responses)
    gated = opaque_mask(spec, detuning, epsilon, responses)

    T = np.empty(detuning.shape)
    R = np.empty(detuning.shape)
    excitation = np.zeros(detuning.shape)

    available = ~gated
    if available.any():
        subset = detuning[available]
        try:
            chain = response(compose(spec, subset, epsilon), spec.drive, epsilon)
            T[available] = chain.T
            R[available] = chain.R
            fields = cavity_fields(spec, subset, epsilon)
            excitation[available] = np.max(
                np.stack([f.state.excitation for f in fields]), axis=0
            )
        except DegenerateChainError as e:
            logger.warning(
                "Composite matrix degenerate, solving directly", error=str(e)
            )
            gated[:] = True

    drive = drive_for(spec)
    for index in np.flatnonzero(gated):
        solution = solve_full(spec, float(detuning[index]), drive)
        T[index] = solution.T
        R[index] = solution.R
        excitation[index] = solution.max_excitation

    if gated.any():
        logger.info(
            "Opaque points evaluated by direct solve",
            points=int(np.count_nonzero(gated)),
            subsystems=spec.size,
        )

    return TransportSpectrum(
        detuning=detuning,
        T=T,
        R=R,
        T_ind=T_ind,
        max_excitation=excitation,
        via_oracle=gated,
    )


def saturation_flags(
    excitation: FloatArray, thresholds: Thresholds
) -> NDArray[np.bool_]:
    """Flag points whose excitation exceeds the saturation limit.

    ``excitation`` is per unit input flux; it is scaled by the squared drive
    amplitude, which is one by default.
    """
    scaled = np.asarray(excitation) * thresholds.drive_amplitude**2
    return np.asarray(scaled > thresholds.saturation)
