"""Domain types, validation and scenario builders."""

from .builders import (
    atom_masks,
    calibrated_kappa_ex,
    configuration_label,
    uniform_chain,
    with_atoms,
)
from .errors import (
    CavityChainError,
    DegenerateChainError,
    GridMismatchError,
    InvalidChainError,
    OpaqueSubsystemError,
    PathwayLimitError,
    PresetNotFoundError,
    ScenarioParseError,
    ScenarioValidationError,
    SingularSystemError,
    UndefinedPhaseError,
)
from .types import (
    AtomParams,
    CavityParams,
    ChainSpec,
    DriveSide,
    ScanGrid,
    SubsystemParams,
    Thresholds,
    ValidationReport,
    Violation,
)
from .validation import validate, validate_grid

__all__ = [
    "AtomParams",
    "CavityParams",
    "ChainSpec",
    "DriveSide",
    "ScanGrid",
    "SubsystemParams",
    "Thresholds",
    "ValidationReport",
    "Violation",
    "validate",
    "validate_grid",
    "uniform_chain",
    "calibrated_kappa_ex",
    "with_atoms",
    "atom_masks",
    "configuration_label",
    "CavityChainError",
    "DegenerateChainError",
    "GridMismatchError",
    "InvalidChainError",
    "OpaqueSubsystemError",
    "PathwayLimitError",
    "PresetNotFoundError",
    "ScenarioParseError",
    "ScenarioValidationError",
    "SingularSystemError",
    "UndefinedPhaseError",
]
