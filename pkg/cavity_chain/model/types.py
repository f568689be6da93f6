"""Domain types for atom-microcavity chains.

Rates are in units of the atomic decay rate gamma, lengths in units of the
probe wavelength lambda.
"""

import math
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np
from numpy.typing import NDArray


class DriveSide(Enum):
    """End of the chain that receives the probe field."""

    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class CavityParams:
    """A whispering-gallery resonator with two counterpropagating modes."""

    delta0: float = 0.0
    h: float = 0.0
    kappa_ex: float = 1.0
    kappa_i: float = 0.0

    @property
    def kappa(self) -> float:
        """Total loss rate kappa_i + kappa_ex."""
        return self.kappa_i + self.kappa_ex


@dataclass(frozen=True)
class AtomParams:
    """A two-level atom coupled to the normal modes A and B."""

    delta0: float = 0.0
    gamma: float = 1.0
    g_a: float = 0.0
    g_b: float = 0.0

    @property
    def couples_single_mode(self) -> bool:
        """True when at most one normal mode sees the atom."""
        return self.g_a == 0.0 or self.g_b == 0.0


@dataclass(frozen=True)
class SubsystemParams:
    """One cavity, optionally with an atom."""

    cavity: CavityParams
    atom: AtomParams | None = None

    def without_atom(self) -> "SubsystemParams":
        return replace(self, atom=None)


@dataclass(frozen=True)
class ChainSpec:
    """Ordered subsystems joined by fiber segments of length L_n."""

    subsystems: tuple[SubsystemParams, ...]
    lengths: tuple[float, ...] = ()
    drive: DriveSide = DriveSide.LEFT

    @property
    def size(self) -> int:
        return len(self.subsystems)

    @property
    def phases(self) -> NDArray[np.float64]:
        """Segment phases phi_n = 2*pi*L_n, reduced with the fractional part of L_n."""
        return np.array(
            [2.0 * math.pi * math.fmod(length, 1.0) for length in self.lengths],
            dtype=np.float64,
        )

    def mirrored(self) -> "ChainSpec":
        """Same chain seen from the other end."""
        return replace(
            self,
            subsystems=tuple(reversed(self.subsystems)),
            lengths=tuple(reversed(self.lengths)),
        )

    def with_lengths(self, lengths: tuple[float, ...] | list[float]) -> "ChainSpec":
        return replace(self, lengths=tuple(float(v) for v in lengths))

    def with_subsystems(
        self, subsystems: tuple[SubsystemParams, ...] | list[SubsystemParams]
    ) -> "ChainSpec":
        return replace(self, subsystems=tuple(subsystems))


@dataclass(frozen=True)
class ScanGrid:
    """Uniform probe-detuning grid; detunings in units of gamma."""

    start: float
    stop: float
    points: int

    @property
    def step(self) -> float:
        return (self.stop - self.start) / (self.points - 1)

    def values(self) -> NDArray[np.float64]:
        return np.linspace(self.start, self.stop, self.points)

    def window(self, low: float, high: float) -> NDArray[np.bool_]:
        """Mask of grid points inside [low, high]."""
        values = self.values()
        return (values >= low) & (values <= high)


@dataclass
class Violation:
    """One failed invariant, addressed by a dotted field path."""

    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.path}: {self.message}"


@dataclass
class ValidationReport:
    """Outcome of validating a chain; never raised."""

    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, path: str, message: str) -> None:
        self.violations.append(Violation(path=path, message=message))

    def paths(self) -> list[str]:
        return [violation.path for violation in self.violations]


@dataclass(frozen=True)
class Thresholds:
    """Numerical gates and diagnostic limits used across a run.

    Excitations are per unit input flux. ``drive_amplitude`` rescales them
    for the saturation flag when the probe is not at unit flux.
    """

    saturation: float = 0.1
    epsilon_T: float = 1e-9
    epsilon_t: float = 1e-12
    drive_amplitude: float = 1.0
