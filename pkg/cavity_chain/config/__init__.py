"""Configuration: runtime settings, scenario schema and bundled presets."""

from .presets import PresetInfo, get_preset, presets
from .scenario import (
    AtomConfig,
    CavityConfig,
    ChainConfig,
    LengthScanConfig,
    OracleCheckConfig,
    OutputConfig,
    PathwayConfig,
    ReflectionConfig,
    ScanConfig,
    Scenario,
    ScenarioConfig,
    SubsystemConfig,
    TaskName,
    ThresholdConfig,
    VariantConfig,
    parse_scenario,
    scenario_document,
    validate_scenario,
)
from .settings import SimulatorSettings

__all__ = [
    "SimulatorSettings",
    "TaskName",
    "Scenario",
    "ScenarioConfig",
    "ChainConfig",
    "SubsystemConfig",
    "CavityConfig",
    "AtomConfig",
    "ScanConfig",
    "OracleCheckConfig",
    "OutputConfig",
    "ThresholdConfig",
    "VariantConfig",
    "LengthScanConfig",
    "PathwayConfig",
    "ReflectionConfig",
    "parse_scenario",
    "validate_scenario",
    "scenario_document",
    "PresetInfo",
    "presets",
    "get_preset",
]
