"""Exception hierarchy for the simulator."""

from typing import Any


class CavityChainError(Exception):
    """Base class for all simulator errors."""


class InvalidChainError(CavityChainError, ValueError):
    """Raised when a chain cannot be built from the given arguments."""


class SingularSystemError(CavityChainError):
    """Raised when a steady-state linear system has no unique solution."""

    def __init__(self, message: str, condition: float = float("inf")) -> None:
        super().__init__(f"{message} (condition estimate {condition:.3g})")
        self.condition = condition


class OpaqueSubsystemError(CavityChainError):
    """Raised when a subsystem is too opaque for the transfer-matrix path.

    Transfer matrices diverge as |t| -> 0; the direct solver in
    ``cavity_chain.solvers.oracle`` handles these points exactly.
    """

    def __init__(self, index: int, min_abs_t: float, epsilon: float) -> None:
        super().__init__(
            f"subsystem {index} has |t| = {min_abs_t:.3g} <= {epsilon:.3g}; "
            "use cavity_chain.solvers.oracle.solve_full for this point"
        )
        self.index = index
        self.min_abs_t = min_abs_t
        self.epsilon = epsilon


class DegenerateChainError(CavityChainError):
    """Raised when a composite transfer matrix has a vanishing m22 entry."""


class UndefinedPhaseError(CavityChainError):
    """Raised when a phase is requested for a zero amplitude."""


class PathwayLimitError(CavityChainError):
    """Raised when pathway enumeration exceeds the configured cap."""

    def __init__(self, cap: int) -> None:
        super().__init__(f"pathway enumeration exceeded cap of {cap} pathways")
        self.cap = cap


class GridMismatchError(CavityChainError):
    """Raised when spectra defined on different grids are compared."""


class PresetNotFoundError(CavityChainError, KeyError):
    """Raised for an unknown preset name."""

    def __init__(self, name: str, available: list[str]) -> None:
        super().__init__(f"unknown preset '{name}', available: {', '.join(available)}")
        self.name = name
        self.available = available

    def __str__(self) -> str:
        return str(self.args[0])


class ScenarioParseError(CavityChainError):
    """Raised when a scenario document is malformed."""

    def __init__(self, message: str, field_path: str = "", line: int | None = None):
        location = field_path or (f"line {line}" if line is not None else "document")
        super().__init__(f"{location}: {message}")
        self.field_path = field_path
        self.line = line


class ScenarioValidationError(CavityChainError):
    """Raised when a parsed scenario violates model invariants."""

    def __init__(self, violations: list[Any]) -> None:
        details = "; ".join(str(v) for v in violations)
        super().__init__(f"scenario failed validation: {details}")
        self.violations = violations
