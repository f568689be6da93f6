"""Transfer-matrix composition of subsystems and fiber segments.

A transfer matrix maps the left-port pair (a_in, b_out) of an element to its
right-port pair (a_out, b_in). For a reciprocal subsystem with amplitudes
t, r (drive from the left) and r' (drive from the right)

    M = (1/t) [[t^2 - r r', r'], [-r, 1]],   det M = 1.

A fiber segment of phase phi is diag(exp(i phi), exp(-i phi)), and the chain
matrix is M_N . M_phi(N-1) ... M_2 . M_phi(1) . M_1.
"""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import structlog
from numpy.typing import ArrayLike, NDArray

from ..model.errors import DegenerateChainError, OpaqueSubsystemError
from ..model.types import ChainSpec, DriveSide
from .resonator import (
    ComplexArray,
    FloatArray,
    ScatteringResponse,
    SteadyState,
    scattering_amplitudes,
    steady_state,
)

logger = structlog.get_logger(__name__)

DEFAULT_EPSILON_T = 1e-12


@dataclass(frozen=True)
class TransferMatrix:
    """Stack of 2x2 transfer matrices with shape (..., 2, 2)."""

    data: ComplexArray

    @property
    def m11(self) -> ComplexArray:
        return self.data[..., 0, 0]

    @property
    def m12(self) -> ComplexArray:
        return self.data[..., 0, 1]

    @property
    def m21(self) -> ComplexArray:
        return self.data[..., 1, 0]

    @property
    def m22(self) -> ComplexArray:
        return self.data[..., 1, 1]

    @property
    def det(self) -> ComplexArray:
        return self.m11 * self.m22 - self.m12 * self.m21

    def __matmul__(self, other: "TransferMatrix") -> "TransferMatrix":
        return TransferMatrix(np.matmul(self.data, other.data))

    @classmethod
    def from_entries(
        cls, m11: ArrayLike, m12: ArrayLike, m21: ArrayLike, m22: ArrayLike
    ) -> "TransferMatrix":
        entries = np.broadcast_arrays(
            *(np.asarray(m, dtype=np.complex128) for m in (m11, m12, m21, m22))
        )
        data = np.stack(entries, axis=-1).reshape(entries[0].shape + (2, 2))
        return cls(data)


@dataclass(frozen=True)
class ChainResponse:
    """End-to-end response of a driven chain.

    ``T_ind`` and ``superness`` are filled by the analysis layer.
    """

    T: FloatArray
    R: FloatArray
    t_total: ComplexArray
    r_total: ComplexArray
    T_ind: FloatArray | None = None
    superness: FloatArray | None = None


@dataclass(frozen=True)
class CavityField:
    """Port inputs and steady state of one cavity inside a driven chain."""

    a_in: ComplexArray
    b_in: ComplexArray
    state: SteadyState

    @property
    def populations(self) -> tuple[FloatArray, FloatArray]:
        return np.abs(self.state.A) ** 2, np.abs(self.state.B) ** 2


def from_scattering(
    resp: ScatteringResponse, epsilon: float = DEFAULT_EPSILON_T, index: int = 0
) -> TransferMatrix:
    """Form the transfer matrix of a subsystem from its scattering amplitudes.

    Raises:
        OpaqueSubsystemError: If |t| <= epsilon at any probe point
    """
    t = np.asarray(resp.t, dtype=np.complex128)
    magnitude = np.abs(t)
    if np.any(magnitude <= epsilon):
        raise OpaqueSubsystemError(index, float(np.min(magnitude)), epsilon)

    r = np.asarray(resp.r, dtype=np.complex128)
    r_reverse = np.asarray(resp.r_reverse, dtype=np.complex128)
    return TransferMatrix.from_entries(
        (t * t - r * r_reverse) / t, r_reverse / t, -r / t, 1.0 / t
    )


def propagation(phi: ArrayLike) -> TransferMatrix:
    """Transfer matrix of a fiber segment with phase ``phi`` (radians)."""
    phase = np.exp(1j * np.asarray(phi, dtype=np.float64))
    zero = np.zeros_like(phase)
    return TransferMatrix.from_entries(phase, zero, zero, 1.0 / phase)


def subsystem_responses(spec: ChainSpec, probe: ArrayLike) -> list[ScatteringResponse]:
    """Scattering amplitudes of every subsystem, in chain order."""
    return [scattering_amplitudes(sub, probe) for sub in spec.subsystems]


def opaque_mask(
    spec: ChainSpec,
    probe: ArrayLike,
    epsilon: float = DEFAULT_EPSILON_T,
    responses: Sequence[ScatteringResponse] | None = None,
) -> NDArray[np.bool_]:
    """Probe points at which some subsystem fails the |t| > epsilon gate."""
    responses = responses if responses is not None else subsystem_responses(spec, probe)
    mask = np.zeros(np.shape(responses[0].t), dtype=bool)
    for resp in responses:
        mask |= np.abs(resp.t) <= epsilon
    return mask


def compose(
    spec: ChainSpec,
    probe: ArrayLike,
    epsilon: float = DEFAULT_EPSILON_T,
    responses: Sequence[ScatteringResponse] | None = None,
) -> TransferMatrix:
    """Total transfer matrix of the chain at the given probe detuning(s).

    Raises:
        OpaqueSubsystemError: Naming the first subsystem that fails the gate
    """
    responses = responses if responses is not None else subsystem_responses(spec, probe)
    phases = spec.phases

    total: TransferMatrix | None = None
    for index, resp in enumerate(responses):
        matrix = from_scattering(resp, epsilon, index)
        if total is None:
            total = matrix
        else:
            total = matrix @ propagation(phases[index - 1]) @ total

    if total is None:
        raise DegenerateChainError("cannot compose an empty chain")

    return total


def response(
    matrix: TransferMatrix,
    drive: DriveSide = DriveSide.LEFT,
    epsilon: float = DEFAULT_EPSILON_T,
) -> ChainResponse:
    """Transmission and reflection of a chain driven from one end.

    Raises:
        DegenerateChainError: If |m22| < epsilon
    """
    m22 = matrix.m22
    if np.any(np.abs(m22) < epsilon):
        raise DegenerateChainError(
            f"|m22| = {float(np.min(np.abs(m22))):.3g} below {epsilon:.3g}"
        )

    if drive is DriveSide.LEFT:
        r_total = -matrix.m21 / m22
        # det M = 1 for reciprocal elements
        t_total = 1.0 / m22
    else:
        r_total = matrix.m12 / m22
        t_total = 1.0 / m22

    return ChainResponse(
        T=np.abs(t_total) ** 2,
        R=np.abs(r_total) ** 2,
        t_total=t_total,
        r_total=r_total,
    )


def independent_transmission(
    spec: ChainSpec,
    probe: ArrayLike,
    responses: Sequence[ScatteringResponse] | None = None,
) -> FloatArray:
    """Transmission of the same subsystems without backward coupling."""
    responses = responses if responses is not None else subsystem_responses(spec, probe)
    product = np.ones(np.shape(responses[0].t), dtype=np.float64)
    for resp in responses:
        product = product * np.abs(resp.t) ** 2
    return product


def cavity_fields(
    spec: ChainSpec,
    probe: ArrayLike,
    epsilon: float = DEFAULT_EPSILON_T,
    responses: Sequence[ScatteringResponse] | None = None,
) -> list[CavityField]:
    """Reconstruct each cavity's inputs and steady state from the total response.

    Port pairs are carried from the left end through the subsystem and segment
    matrices; each cavity is then solved with its own inputs.
    """
    responses = responses if responses is not None else subsystem_responses(spec, probe)
    total = compose(spec, probe, epsilon, responses)
    chain = response(total, spec.drive, epsilon)

    if spec.drive is DriveSide.LEFT:
        left = np.stack(
            np.broadcast_arrays(np.ones_like(chain.r_total), chain.r_total), axis=-1
        )
    else:
        left = np.stack(
            np.broadcast_arrays(np.zeros_like(chain.t_total), chain.t_total), axis=-1
        )

    phases = spec.phases
    right = left
    fields: list[CavityField] = []
    for index, (sub, resp) in enumerate(zip(spec.subsystems, responses, strict=True)):
        if index > 0:
            left = np.matmul(propagation(phases[index - 1]).data, right[..., None])[
                ..., 0
            ]
        matrix = from_scattering(resp, epsilon, index)
        right = np.matmul(matrix.data, left[..., None])[..., 0]
        a_in, b_in = left[..., 0], right[..., 1]
        fields.append(
            CavityField(
                a_in=a_in, b_in=b_in, state=steady_state(sub, probe, a_in, b_in)
            )
        )

    return fields
