"""Steady-state solvers: single subsystems, transfer matrices, direct solve."""

from .chain import (
    DEFAULT_EPSILON_T,
    CavityField,
    ChainResponse,
    TransferMatrix,
    cavity_fields,
    compose,
    from_scattering,
    independent_transmission,
    opaque_mask,
    propagation,
    response,
    subsystem_responses,
)
from .oracle import (
    DiscrepancyReport,
    FullSolution,
    compare_with_transfer,
    relative_discrepancy,
    solve_full,
)
from .resonator import (
    ExcitationReport,
    ScatteringResponse,
    SteadyState,
    excitation_guard,
    mode_populations,
    port_outputs,
    scattering_amplitudes,
    steady_state,
)

__all__ = [
    "DEFAULT_EPSILON_T",
    "SteadyState",
    "ScatteringResponse",
    "ExcitationReport",
    "steady_state",
    "port_outputs",
    "scattering_amplitudes",
    "excitation_guard",
    "mode_populations",
    "TransferMatrix",
    "ChainResponse",
    "CavityField",
    "from_scattering",
    "propagation",
    "subsystem_responses",
    "opaque_mask",
    "compose",
    "response",
    "independent_transmission",
    "cavity_fields",
    "FullSolution",
    "DiscrepancyReport",
    "solve_full",
    "compare_with_transfer",
    "relative_discrepancy",
]
