"""Helpers for constructing common chain scenarios."""

import itertools
import math
from collections.abc import Iterator, Sequence

from .errors import InvalidChainError
from .types import ChainSpec, SubsystemParams


def uniform_chain(n: int, sub: SubsystemParams, length: float) -> ChainSpec:
    """Build a chain of ``n`` identical subsystems with equal spacing.

    Args:
        n: Number of subsystems (>= 1)
        sub: Subsystem replicated along the chain
        length: Segment length in units of lambda (> 0)

    Returns:
        Chain with n subsystems and n-1 equal lengths

    Raises:
        InvalidChainError: If n < 1 or the length is not positive
    """
    if n < 1:
        raise InvalidChainError(f"a chain needs at least one subsystem, got n={n}")
    if not (math.isfinite(length) and length > 0):
        raise InvalidChainError(f"segment length must be positive, got {length}")

    return ChainSpec(subsystems=(sub,) * n, lengths=(float(length),) * (n - 1))


def calibrated_kappa_ex(h: float, kappa_i: float) -> float:
    """Fiber coupling at which an empty cavity is opaque at zero detuning.

    With normal modes at -h and +h, |t(0)| = 0 requires
    kappa_ex**2 - kappa_i**2 = h**2.
    """
    return math.sqrt(h * h + kappa_i * kappa_i)


def with_atoms(spec: ChainSpec, mask: Sequence[bool]) -> ChainSpec:
    """Keep the atom at cavity n only where ``mask[n]`` is true."""
    if len(mask) != spec.size:
        raise InvalidChainError(
            f"mask has {len(mask)} entries for a chain of {spec.size} subsystems"
        )
    subsystems = tuple(
        sub if keep else sub.without_atom()
        for sub, keep in zip(spec.subsystems, mask, strict=True)
    )
    return spec.with_subsystems(subsystems)


def atom_masks(spec: ChainSpec) -> Iterator[tuple[bool, ...]]:
    """Every on/off pattern over the cavities that carry an atom in ``spec``.

    Cavities without an atom stay empty in every pattern.
    """
    carriers = [sub.atom is not None for sub in spec.subsystems]
    for bits in itertools.product((False, True), repeat=sum(carriers)):
        choice = iter(bits)
        yield tuple(next(choice) if carrier else False for carrier in carriers)


def configuration_label(mask: Sequence[bool]) -> str:
    """Readable label such as ``none``, ``1`` or ``1+2`` (1-based cavities)."""
    on = [str(index + 1) for index, keep in enumerate(mask) if keep]
    return "+".join(on) if on else "none"
