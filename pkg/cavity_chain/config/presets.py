"""Bundled scenarios for the two- and three-cavity figure regimes.

Published values: h = 50, g_B = 70, g_A = 0, gamma = 1 and the segment
lengths. Fiber coupling and intrinsic loss are not published; every preset
records the calibration it uses under ``calibration``. The chain-length
scan uses heavier loss than the other presets: with the opaque-at-zero rule
the peak of odd and even chains alternates instead of decaying with N.
"""

from collections.abc import Callable
from dataclasses import dataclass

from ..model.builders import calibrated_kappa_ex
from ..model.errors import PresetNotFoundError
from .scenario import (
    AtomConfig,
    CavityConfig,
    ChainConfig,
    LengthScanConfig,
    OutputConfig,
    PathwayConfig,
    ReflectionConfig,
    ScanConfig,
    ScenarioConfig,
    SubsystemConfig,
    TaskName,
    VariantConfig,
)

SPLITTING = 50.0
COUPLING_B = 70.0
INTRINSIC_LOSS = 7.0
FIBER_COUPLING = calibrated_kappa_ex(SPLITTING, INTRINSIC_LOSS)

CALIBRATION = {
    "kappa_i": INTRINSIC_LOSS,
    "kappa_ex": FIBER_COUPLING,
    "rule": (
        "kappa_ex = sqrt(h^2 + kappa_i^2): an empty cavity is opaque at zero detuning"
    ),
    "delta0": 0.0,
    "Delta0": 0.0,
    "status": "calibration, not published values",
}

CHAIN_LENGTH_INTRINSIC_LOSS = 22.0
CHAIN_LENGTH_FIBER_COUPLING = 46.0

CHAIN_LENGTH_CALIBRATION = {
    **CALIBRATION,
    "kappa_i": CHAIN_LENGTH_INTRINSIC_LOSS,
    "kappa_ex": CHAIN_LENGTH_FIBER_COUPLING,
    "rule": (
        "kappa_i and kappa_ex chosen so peak delta_T falls strictly with N "
        "over N = 2..20 at L = 100.2"
    ),
}


@dataclass(frozen=True)
class PresetInfo:
    name: str
    description: str


def _subsystem(
    kappa_ex: float = FIBER_COUPLING, kappa_i: float = INTRINSIC_LOSS
) -> SubsystemConfig:
    return SubsystemConfig(
        cavity=CavityConfig(h=SPLITTING, kappa_ex=kappa_ex, kappa_i=kappa_i),
        atom=AtomConfig(gamma=1.0, g_a=0.0, g_b=COUPLING_B),
    )


def _variants(lengths: list[list[float]]) -> list[VariantConfig]:
    return [
        VariantConfig(label=f"L1_{series[0]}", lengths=series) for series in lengths
    ]


def _fig2() -> ScenarioConfig:
    return ScenarioConfig(
        name="fig2",
        chain=ChainConfig(subsystems=[_subsystem(), _subsystem()], lengths=[100.15]),
        scan=ScanConfig(start=-150.0, stop=150.0, points=3001),
        tasks=[TaskName.SPECTRUM, TaskName.SUPERNESS, TaskName.PATHWAYS],
        variants=_variants([[100.0], [100.15], [100.25], [100.35]]),
        pathways=PathwayConfig(max_bounces=60),
        output=OutputConfig(path="results/fig2"),
        calibration=dict(CALIBRATION),
    )


def _fig3() -> ScenarioConfig:
    sub = _subsystem(CHAIN_LENGTH_FIBER_COUPLING, CHAIN_LENGTH_INTRINSIC_LOSS)
    return ScenarioConfig(
        name="fig3",
        chain=ChainConfig(subsystems=[sub, sub], lengths=[100.2]),
        scan=ScanConfig(start=0.0, stop=80.0, points=801),
        tasks=[TaskName.LENGTH_SCAN],
        length_scan=LengthScanConfig(length=100.2, n_min=2, n_max=20),
        output=OutputConfig(path="results/fig3"),
        calibration=dict(CHAIN_LENGTH_CALIBRATION),
    )


def _fig4() -> ScenarioConfig:
    return ScenarioConfig(
        name="fig4",
        chain=ChainConfig(subsystems=[_subsystem(), _subsystem()], lengths=[100.3]),
        scan=ScanConfig(start=-150.0, stop=150.0, points=3001),
        tasks=[TaskName.REFLECTION],
        reflection=ReflectionConfig(landmarks=[37.0]),
        output=OutputConfig(path="results/fig4"),
        calibration=dict(CALIBRATION),
    )


def _fig5() -> ScenarioConfig:
    return ScenarioConfig(
        name="fig5",
        chain=ChainConfig(
            subsystems=[_subsystem(), _subsystem(), _subsystem()],
            lengths=[100.15, 100.15],
        ),
        scan=ScanConfig(start=-150.0, stop=150.0, points=3001),
        tasks=[TaskName.SPECTRUM, TaskName.SUPERNESS],
        variants=_variants(
            [[100.0, 100.3], [100.05, 100.25], [100.1, 100.2], [100.15, 100.15]]
        ),
        output=OutputConfig(path="results/fig5"),
        calibration=dict(CALIBRATION),
    )


_PRESETS: dict[str, tuple[str, Callable[[], ScenarioConfig]]] = {
    "fig2": (
        "Two atom-cavity subsystems, four first-segment lengths; supermode superness",
        _fig2,
    ),
    "fig3": (
        "Uniform chains of 2 to 20 subsystems at L = 100.2; peak superness versus N",
        _fig3,
    ),
    "fig4": (
        "Two cavities at L1 = 100.3; reflection of all four atom on/off configurations",
        _fig4,
    ),
    "fig5": (
        "Three subsystems, total length 200.3, four splittings of the first segment",
        _fig5,
    ),
}


def presets() -> list[PresetInfo]:
    """Names and descriptions of the bundled scenarios."""
    return [
        PresetInfo(name=name, description=entry[0]) for name, entry in _PRESETS.items()
    ]


def get_preset(name: str) -> ScenarioConfig:
    """A fresh copy of the named bundled scenario.

    Raises:
        PresetNotFoundError: If no preset has that name
    """
    entry = _PRESETS.get(name)
    if entry is None:
        raise PresetNotFoundError(name, sorted(_PRESETS))
    return entry[1]()
