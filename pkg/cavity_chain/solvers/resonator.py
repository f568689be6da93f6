"""Steady state of a single atom-cavity subsystem in the weak-excitation regime.

With sigma_z -> -1 the Heisenberg-Langevin equations become linear. For the
normal modes A = (a+b)/sqrt(2), B = (a-b)/sqrt(2) and the atomic coherence
sigma, the steady state solves

    0 = -[i(delta+h) + kappa] A + sqrt(2 kappa_ex) A_in - i g_A sigma
    0 = -[i(delta-h) + kappa] B + sqrt(2 kappa_ex) B_in - g_B sigma
    0 = -[i Delta + gamma] sigma - i g_A A + g_B B

with kappa = kappa_i + kappa_ex. The atom-mode couplings are Hermitian, so
the subsystem is passive and its transmission reciprocal. Port fields follow
a_out = -a_in + sqrt(2 kappa_ex) a (same for b).

All functions broadcast over array-valued probe detunings and drives.
"""

import math
from dataclasses import dataclass
from typing import Any

import numpy as np
import structlog
from numpy.typing import ArrayLike, NDArray

from ..model.errors import SingularSystemError
from ..model.types import SubsystemParams

logger = structlog.get_logger(__name__)

ComplexArray = NDArray[np.complex128]
FloatArray = NDArray[np.float64]

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class SteadyState:
    """Normal-mode amplitudes and atomic coherence per unit input flux."""

    A: ComplexArray
    B: ComplexArray
    sigma: ComplexArray

    @property
    def excitation(self) -> FloatArray:
        """Atomic excitation |sigma|^2."""
        return np.abs(self.sigma) ** 2


@dataclass(frozen=True)
class ScatteringResponse:
    """Transmission and reflection amplitudes of one subsystem.

    ``r`` is the reflection for drive from the left, ``r_reverse`` for drive
    from the right. They coincide whenever the atom couples to at most one
    normal mode.
    """

    t: ComplexArray
    r: ComplexArray
    r_reverse: ComplexArray
    state: SteadyState

    @property
    def symmetric(self) -> bool:
        return bool(np.array_equal(self.r, self.r_reverse))


@dataclass(frozen=True)
class ExcitationReport:
    """Saturation diagnostic for a given drive strength."""

    excitation: FloatArray
    saturated: NDArray[np.bool_]


def _solve_atom_free(
    loss_a: ComplexArray, loss_b: ComplexArray, drive_a: Any, drive_b: Any
) -> tuple[ComplexArray, ComplexArray]:
    if np.any(loss_a == 0) or np.any(loss_b == 0):
        raise SingularSystemError("cavity mode without damping driven on resonance")
    return drive_a / loss_a, drive_b / loss_b


def steady_state(
    sub: SubsystemParams,
    probe: ArrayLike,
    a_in: ArrayLike = 1.0,
    b_in: ArrayLike = 0.0,
) -> SteadyState:
    """Solve the linear steady state of one subsystem.

    Args:
        sub: Validated subsystem parameters
        probe: Common probe detuning(s) in units of gamma
        a_in: Input flux amplitude of the forward fiber mode
        b_in: Input flux amplitude of the backward fiber mode

    Returns:
        Steady state broadcast over probe and drive shapes

    Raises:
        SingularSystemError: If the system matrix is singular at some probe
    """
    detuning = np.asarray(probe, dtype=np.float64)
    a_drive = np.asarray(a_in, dtype=np.complex128)
    b_drive = np.asarray(b_in, dtype=np.complex128)
    shape = np.broadcast_shapes(detuning.shape, a_drive.shape, b_drive.shape)

    cavity = sub.cavity
    delta = cavity.delta0 + detuning
    coupling = math.sqrt(2.0 * cavity.kappa_ex)
    drive_a = coupling * (a_drive + b_drive) / SQRT2
    drive_b = coupling * (a_drive - b_drive) / SQRT2
    loss_a = 1j * (delta + cavity.h) + cavity.kappa
    loss_b = 1j * (delta - cavity.h) + cavity.kappa

    atom = sub.atom
    if atom is None:
        mode_a, mode_b = _solve_atom_free(loss_a, loss_b, drive_a, drive_b)
        return SteadyState(
            A=np.broadcast_to(mode_a, shape).astype(np.complex128),
            B=np.broadcast_to(mode_b, shape).astype(np.complex128),
            sigma=np.zeros(shape, dtype=np.complex128),
        )

    system = np.zeros(shape + (3, 3), dtype=np.complex128)
    system[..., 0, 0] = -loss_a
    system[..., 0, 2] = -1j * atom.g_a
    system[..., 1, 1] = -loss_b
    system[..., 1, 2] = -atom.g_b
    system[..., 2, 0] = -1j * atom.g_a
    system[..., 2, 1] = atom.g_b
    system[..., 2, 2] = -(1j * (atom.delta0 + detuning) + atom.gamma)

    rhs = np.zeros(shape + (3, 1), dtype=np.complex128)
    rhs[..., 0, 0] = -drive_a
    rhs[..., 1, 0] = -drive_b

    try:
        solution = np.linalg.solve(system, rhs)[..., 0]
    except np.linalg.LinAlgError as e:
        raise SingularSystemError(f"subsystem steady state: {e}") from e

    if not np.all(np.isfinite(solution)):
        raise SingularSystemError("subsystem steady state is not finite")

    return SteadyState(A=solution[..., 0], B=solution[..., 1], sigma=solution[..., 2])


def port_outputs(
    sub: SubsystemParams,
    state: SteadyState,
    a_in: ArrayLike = 1.0,
    b_in: ArrayLike = 0.0,
) -> tuple[ComplexArray, ComplexArray]:
    """Apply the input-output relations to a solved steady state.

    Returns:
        Tuple (a_out, b_out)
    """
    coupling = math.sqrt(2.0 * sub.cavity.kappa_ex)
    mode_a = (state.A + state.B) / SQRT2
    mode_b = (state.A - state.B) / SQRT2
    a_out = -np.asarray(a_in, dtype=np.complex128) + coupling * mode_a
    b_out = -np.asarray(b_in, dtype=np.complex128) + coupling * mode_b
    return a_out, b_out


def scattering_amplitudes(sub: SubsystemParams, probe: ArrayLike) -> ScatteringResponse:
    """Frequency-dependent transmission and reflection of one subsystem.

    Args:
        sub: Validated subsystem parameters
        probe: Probe detuning(s) in units of gamma

    Returns:
        t and r under unit forward drive, plus the reflection for drive from
        the right and the forward steady state
    """
    forward = steady_state(sub, probe, 1.0, 0.0)
    t, r = port_outputs(sub, forward, 1.0, 0.0)

    if sub.atom is None or sub.atom.couples_single_mode:
        r_reverse = r
    else:
        backward = steady_state(sub, probe, 0.0, 1.0)
        r_reverse, _ = port_outputs(sub, backward, 0.0, 1.0)

    return ScatteringResponse(t=t, r=r, r_reverse=r_reverse, state=forward)


def excitation_guard(
    sub: SubsystemParams,
    probe: ArrayLike,
    drive: tuple[ArrayLike, ArrayLike] = (1.0, 0.0),
    threshold: float = 0.1,
) -> ExcitationReport:
    """Flag probes where the atom would leave the weak-excitation regime.

    Purely diagnostic: the linear solution is returned unchanged elsewhere.
    """
    state = steady_state(sub, probe, *drive)
    excitation = state.excitation
    saturated = excitation > threshold
    if np.any(saturated):
        logger.debug(
            "Weak-excitation assumption violated",
            points=int(np.count_nonzero(saturated)),
            max_excitation=float(np.max(excitation)),
            threshold=threshold,
        )
    return ExcitationReport(excitation=excitation, saturated=saturated)


def mode_populations(
    sub: SubsystemParams,
    probe: ArrayLike,
    drive: tuple[ArrayLike, ArrayLike] = (1.0, 0.0),
) -> tuple[FloatArray, FloatArray]:
    """Normal-mode populations (|A|^2, |B|^2)."""
    state = steady_state(sub, probe, *drive)
    return np.abs(state.A) ** 2, np.abs(state.B) ** 2
