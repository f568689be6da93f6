"""Superness, pathway interference and configuration signatures."""

from .pathways import (
    Direction,
    EventKind,
    PathEvent,
    Pathway,
    constructive_condition,
    pathways,
)
from .peaks import Peak, find_superness_peaks, global_peak
from .signatures import (
    Classification,
    ConfigurationSignature,
    SignatureFeatures,
    classify_configuration,
    reflection_signatures,
)
from .spectrum import TransportSpectrum, saturation_flags, transport_spectrum
from .superness import (
    DecouplingDetunings,
    LengthScanEntry,
    SupernessPoint,
    SupernessSpectrum,
    decoupling_detunings,
    peak_superness,
    relative_superness,
    scan_chain_length,
    superness_at,
    superness_spectrum,
)

__all__ = [
    "TransportSpectrum",
    "transport_spectrum",
    "saturation_flags",
    "SupernessPoint",
    "SupernessSpectrum",
    "LengthScanEntry",
    "DecouplingDetunings",
    "superness_spectrum",
    "superness_at",
    "relative_superness",
    "peak_superness",
    "scan_chain_length",
    "decoupling_detunings",
    "Peak",
    "find_superness_peaks",
    "global_peak",
    "EventKind",
    "Direction",
    "PathEvent",
    "Pathway",
    "pathways",
    "constructive_condition",
    "SignatureFeatures",
    "ConfigurationSignature",
    "Classification",
    "reflection_signatures",
    "classify_configuration",
]
