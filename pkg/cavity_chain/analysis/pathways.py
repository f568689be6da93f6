"""Decomposition of chain transmission into multiple-reflection pathways.

A pathway enters cavity 1 moving forward and leaves cavity N moving forward.
At each cavity it either transmits (t) or reflects (r from the left, r' from
the right); each segment traversal, in either direction, adds exp(i phi_k).
Pathways leaving through the left end never reach the output and are
discarded.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
import structlog

from ..model.errors import PathwayLimitError, UndefinedPhaseError
from ..model.types import ChainSpec
from ..solvers.resonator import scattering_amplitudes

logger = structlog.get_logger(__name__)

DEFAULT_PATHWAY_CAP = 100_000


class EventKind(Enum):
    TRANSMIT = "t"
    REFLECT = "r"
    PROPAGATE = "p"


class Direction(Enum):
    FORWARD = "+"
    BACKWARD = "-"


@dataclass(frozen=True)
class PathEvent:
    """One traversal step; ``index`` is 0-based (cavity or segment)."""

    kind: EventKind
    index: int
    direction: Direction

    def __str__(self) -> str:
        if self.kind is EventKind.PROPAGATE:
            return f"p{self.index + 1}{self.direction.value}"
        if self.kind is EventKind.REFLECT and self.direction is Direction.BACKWARD:
            return f"r'{self.index + 1}"
        return f"{self.kind.value}{self.index + 1}"


@dataclass(frozen=True)
class Pathway:
    events: tuple[PathEvent, ...]
    amplitude: complex
    bounces: int

    @property
    def descriptor(self) -> str:
        return " ".join(str(event) for event in self.events)


def pathways(
    spec: ChainSpec,
    probe: float,
    max_bounces: int,
    cap: int = DEFAULT_PATHWAY_CAP,
) -> tuple[list[Pathway], complex]:
    """Enumerate pathways with at most ``max_bounces`` reflections.

    Args:
        spec: Validated chain; the walk always enters at the left end
        probe: Probe detuning in units of gamma
        max_bounces: Even, non-negative reflection budget
        cap: Maximum number of pathways before enumeration aborts

    Returns:
        Pathways ordered by bounce count then discovery order, and their sum

    Raises:
        ValueError: If max_bounces is negative or odd
        PathwayLimitError: If more than ``cap`` pathways exist
    """
    if max_bounces < 0 or max_bounces % 2:
        raise ValueError(f"max_bounces must be even and >= 0, got {max_bounces}")

    count = spec.size
    amplitudes = [scattering_amplitudes(sub, probe) for sub in spec.subsystems]
    t = [complex(a.t) for a in amplitudes]
    r = [complex(a.r) for a in amplitudes]
    r_back = [complex(a.r_reverse) for a in amplitudes]
    links = [complex(np.exp(1j * phi)) for phi in spec.phases]

    found: list[Pathway] = []
    # (cavity about to be hit, direction, amplitude, bounces, events)
    stack: list[tuple[int, Direction, complex, int, tuple[PathEvent, ...]]] = [
        (0, Direction.FORWARD, 1.0 + 0.0j, 0, ())
    ]

    while stack:
        k, direction, amplitude, bounces, events = stack.pop()

        if direction is Direction.FORWARD:
            # Reflect first so transmission is explored first (LIFO).
            if bounces < max_bounces and k > 0:
                stack.append(
                    (
                        k - 1,
                        Direction.BACKWARD,
                        amplitude * r[k] * links[k - 1],
                        bounces + 1,
                        events
                        + (
                            PathEvent(EventKind.REFLECT, k, Direction.FORWARD),
                            PathEvent(EventKind.PROPAGATE, k - 1, Direction.BACKWARD),
                        ),
                    )
                )
            passed = events + (PathEvent(EventKind.TRANSMIT, k, Direction.FORWARD),)
            if k == count - 1:
                found.append(Pathway(passed, amplitude * t[k], bounces))
                if len(found) > cap:
                    raise PathwayLimitError(cap)
            else:
                stack.append(
                    (
                        k + 1,
                        Direction.FORWARD,
                        amplitude * t[k] * links[k],
                        bounces,
                        (*passed, PathEvent(EventKind.PROPAGATE, k, Direction.FORWARD)),
                    )
                )
            continue

        # Moving backward: a further reflection is required to reach the output.
        if bounces >= max_bounces:
            continue
        stack.append(
            (
                k + 1,
                Direction.FORWARD,
                amplitude * r_back[k] * links[k],
                bounces + 1,
                events
                + (
                    PathEvent(EventKind.REFLECT, k, Direction.BACKWARD),
                    PathEvent(EventKind.PROPAGATE, k, Direction.FORWARD),
                ),
            )
        )
        if k > 0:
            stack.append(
                (
                    k - 1,
                    Direction.BACKWARD,
                    amplitude * t[k] * links[k - 1],
                    bounces,
                    events
                    + (
                        PathEvent(EventKind.TRANSMIT, k, Direction.BACKWARD),
                        PathEvent(EventKind.PROPAGATE, k - 1, Direction.BACKWARD),
                    ),
                )
            )

    found.sort(key=lambda pathway: pathway.bounces)
    total = complex(sum(p.amplitude for p in found))

    logger.debug(
        "Enumerated pathways",
        subsystems=count,
        max_bounces=max_bounces,
        pathways=len(found),
    )
    return found, total


def constructive_condition(r_a: complex, r_b: complex, phi: float) -> float:
    """Phase mismatch arg(r_a) + arg(r_b) + 2 phi, reduced to (-pi, pi].

    Zero means the two-bounce pathway through the segment adds in phase with
    the direct one.

    Raises:
        UndefinedPhaseError: If either reflection amplitude is zero
    """
    if r_a == 0 or r_b == 0:
        raise UndefinedPhaseError(
            "reflection amplitude is zero; its phase is undefined"
        )

    total = np.angle(r_a) + np.angle(r_b) + 2.0 * phi
    mismatch = math.remainder(float(total), 2.0 * math.pi)
    return math.pi if mismatch <= -math.pi else mismatch
