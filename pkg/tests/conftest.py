"""Pytest configuration and fixtures for cavity chain tests."""

import json

import numpy as np
import pytest

from cavity_chain.config import SimulatorSettings
from cavity_chain.config.presets import (
    COUPLING_B,
    FIBER_COUPLING,
    INTRINSIC_LOSS,
    SPLITTING,
)
from cavity_chain.model import (
    AtomParams,
    CavityParams,
    ChainSpec,
    ScanGrid,
    SubsystemParams,
    uniform_chain,
)


@pytest.fixture
def simulator_settings():
    """Provide test simulator settings."""
    return SimulatorSettings(
        log_level="DEBUG",
        log_format="plain",
        metrics_enabled=False,
    )


@pytest.fixture
def calibrated_cavity():
    """Empty cavity at the preset calibration."""
    return CavityParams(h=SPLITTING, kappa_ex=FIBER_COUPLING, kappa_i=INTRINSIC_LOSS)


@pytest.fixture
def calibrated_subsystem(calibrated_cavity):
    """Cavity with an atom coupled to mode B only, as in every preset."""
    return SubsystemParams(
        cavity=calibrated_cavity,
        atom=AtomParams(gamma=1.0, g_a=0.0, g_b=COUPLING_B),
    )


@pytest.fixture
def lossless_cavity():
    """Atom-free cavity without intrinsic loss."""
    return SubsystemParams(cavity=CavityParams(h=1.0, kappa_ex=2.0, kappa_i=0.0))


@pytest.fixture
def two_cavity_chain(calibrated_subsystem):
    """Two calibrated subsystems at L1 = 100.15."""
    return uniform_chain(2, calibrated_subsystem, 100.15)


@pytest.fixture
def asymmetric_chain():
    """Two different subsystems, both coupling the atom to both modes."""
    first = SubsystemParams(
        cavity=CavityParams(delta0=1.0, h=4.0, kappa_ex=3.0, kappa_i=0.5),
        atom=AtomParams(delta0=-2.0, gamma=1.0, g_a=2.0, g_b=5.0),
    )
    second = SubsystemParams(
        cavity=CavityParams(delta0=-1.5, h=1.0, kappa_ex=1.5, kappa_i=0.2),
        atom=AtomParams(delta0=0.5, gamma=0.7, g_a=1.0, g_b=3.0),
    )
    return ChainSpec(subsystems=(first, second), lengths=(50.3,))


@pytest.fixture
def coarse_grid():
    """Small grid over the full figure range."""
    return ScanGrid(start=-150.0, stop=150.0, points=301)


@pytest.fixture
def rng():
    """Seeded generator for randomized checks."""
    return np.random.default_rng(20240611)


@pytest.fixture
def minimal_scenario():
    """Smallest valid scenario document."""
    return {
        "chain": {
            "subsystems": [{"cavity": {"h": 1.0, "kappa_ex": 2.0, "kappa_i": 0.0}}],
            "lengths": [],
        },
        "tasks": ["spectrum"],
    }


@pytest.fixture
def scenario_file(tmp_path, minimal_scenario):
    """Write a scenario document to disk and return its path."""

    def write(document=None, name="scenario.json"):
        document = minimal_scenario if document is None else document
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding="utf-8")
        return path

    return write
