"""Reflection signatures of atom-coupling configurations and their classification."""

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
import structlog
from numpy.typing import ArrayLike

from ..model.builders import atom_masks, configuration_label, with_atoms
from ..model.errors import GridMismatchError, InvalidChainError
from ..model.types import ChainSpec, ScanGrid, Thresholds
from ..solvers.resonator import FloatArray
from .spectrum import transport_spectrum

logger = structlog.get_logger(__name__)

DEFAULT_SIGNATURE_CAP = 4
DEFAULT_AMBIGUITY_MARGIN = 0.01


@dataclass(frozen=True)
class SignatureFeatures:
    min_detuning: float
    min_value: float
    landmarks: dict[float, float] = field(default_factory=dict)


@dataclass(frozen=True)
class ConfigurationSignature:
    """Reflection spectrum of one atom on/off pattern."""

    label: str
    mask: tuple[bool, ...]
    grid: ScanGrid
    spectrum: FloatArray
    features: SignatureFeatures


@dataclass(frozen=True)
class Classification:
    label: str
    margin: float
    ambiguous: bool
    distances: dict[str, float]


def _features(
    grid: ScanGrid, spectrum: FloatArray, landmarks: Sequence[float]
) -> SignatureFeatures:
    probes = grid.values()
    lowest = int(np.argmin(spectrum))
    return SignatureFeatures(
        min_detuning=float(probes[lowest]),
        min_value=float(spectrum[lowest]),
        landmarks={
            float(x): float(np.interp(x, probes, spectrum)) for x in landmarks
        },
    )


def reflection_signatures(
    base: ChainSpec,
    grid: ScanGrid,
    cap: int = DEFAULT_SIGNATURE_CAP,
    landmarks: Sequence[float] = (),
    thresholds: Thresholds | None = None,
) -> list[ConfigurationSignature]:
    """R(probe) for every on/off pattern of the atoms in ``base``.

    The pattern keeping every atom reproduces ``base`` itself.

    Raises:
        InvalidChainError: If the chain has more than ``cap`` subsystems
    """
    if base.size > cap:
        raise InvalidChainError(
            f"{base.size} subsystems exceed the signature cap of {cap}"
        )

    signatures: list[ConfigurationSignature] = []
    for mask in atom_masks(base):
        spec = with_atoms(base, mask)
        R = transport_spectrum(spec, grid.values(), thresholds).R
        signatures.append(
            ConfigurationSignature(
                label=configuration_label(mask),
                mask=mask,
                grid=grid,
                spectrum=R,
                features=_features(grid, R, landmarks),
            )
        )

    logger.info(
        "Generated reflection signatures",
        configurations=len(signatures),
        points=grid.points,
    )
    return signatures


def classify_configuration(
    observed: ArrayLike,
    candidates: Sequence[ConfigurationSignature],
    grid: ScanGrid | None = None,
    ambiguity_margin: float = DEFAULT_AMBIGUITY_MARGIN,
) -> Classification:
    """Nearest candidate under the maximum pointwise distance.

    Args:
        observed: Reflection spectrum sampled on the candidates' grid
        candidates: Signatures to compare against
        grid: Grid of the observed spectrum, checked against the candidates
        ambiguity_margin: Margins below this are flagged ambiguous

    Raises:
        GridMismatchError: If grids or spectrum lengths disagree
        ValueError: If there are no candidates
    """
    if not candidates:
        raise ValueError("no candidate signatures to classify against")

    spectrum = np.asarray(observed, dtype=np.float64)
    reference = grid or candidates[0].grid
    for candidate in candidates:
        if candidate.grid != reference:
            raise GridMismatchError(
                f"candidate '{candidate.label}' uses grid {candidate.grid}, "
                f"expected {reference}"
            )
    if spectrum.shape != (reference.points,):
        raise GridMismatchError(
            f"observed spectrum has shape {spectrum.shape}, "
            f"grid has {reference.points} points"
        )

    distances = [
        float(np.max(np.abs(spectrum - candidate.spectrum))) for candidate in candidates
    ]
    ranked = sorted(range(len(candidates)), key=lambda i: (distances[i], i))
    best = candidates[ranked[0]].label
    if len(ranked) > 1:
        margin = distances[ranked[1]] - distances[ranked[0]]
    else:
        margin = float("inf")

    ambiguous = margin < ambiguity_margin
    if ambiguous:
        logger.warning("Ambiguous configuration match", best=best, margin=margin)

    return Classification(
        label=best,
        margin=margin,
        ambiguous=ambiguous,
        distances={c.label: d for c, d in zip(candidates, distances, strict=True)},
    )
