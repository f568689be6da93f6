"""Unit tests for the single-subsystem steady state."""

import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cavity_chain.model import AtomParams, CavityParams, SubsystemParams
from cavity_chain.solvers import (
    excitation_guard,
    mode_populations,
    port_outputs,
    scattering_amplitudes,
    steady_state,
)

rates = st.floats(min_value=0.1, max_value=100.0)
offsets = st.floats(min_value=-50.0, max_value=50.0)


@st.composite
def subsystems(draw, with_atom=True):
    cavity = CavityParams(
        delta0=draw(offsets),
        h=draw(st.floats(min_value=0.0, max_value=100.0)),
        kappa_ex=draw(rates),
        kappa_i=draw(st.floats(min_value=0.0, max_value=100.0)),
    )
    if not with_atom:
        return SubsystemParams(cavity=cavity)
    atom = AtomParams(
        delta0=draw(offsets),
        gamma=draw(rates),
        g_a=draw(st.floats(min_value=0.0, max_value=100.0)),
        g_b=draw(st.floats(min_value=0.0, max_value=100.0)),
    )
    return SubsystemParams(cavity=cavity, atom=atom)


@st.composite
def single_mode_subsystems(draw):
    sub = draw(subsystems())
    coupling = draw(st.floats(min_value=0.0, max_value=100.0))
    if draw(st.booleans()):
        atom = replace(sub.atom, g_a=coupling, g_b=0.0)
    else:
        atom = replace(sub.atom, g_a=0.0, g_b=coupling)
    return replace(sub, atom=atom)


class TestSteadyState:
    """Test the linear steady state."""

    def test_closed_form_single_mode(self, calibrated_subsystem):
        """Test against the eliminated 3x3 solution with g_A = 0."""
        probe = 10.0
        cavity = calibrated_subsystem.cavity
        g_b = calibrated_subsystem.atom.g_b
        coupling = math.sqrt(2.0 * cavity.kappa_ex)
        drive = 1.0 / math.sqrt(2.0)

        atom_loss = 1j * probe + 1.0
        expected_b = coupling * drive / (
            1j * (probe - cavity.h) + cavity.kappa + g_b**2 / atom_loss
        )
        expected_a = coupling * drive / (1j * (probe + cavity.h) + cavity.kappa)

        state = steady_state(calibrated_subsystem, probe)

        assert complex(state.A) == pytest.approx(expected_a, rel=1e-12)
        assert complex(state.B) == pytest.approx(expected_b, rel=1e-12)
        expected_sigma = g_b * expected_b / atom_loss
        assert complex(state.sigma) == pytest.approx(expected_sigma, rel=1e-12)

    def test_atom_free_sigma_is_zero(self, lossless_cavity):
        """Test that an empty cavity has no atomic coherence."""
        state = steady_state(lossless_cavity, np.linspace(-5, 5, 11))

        assert state.sigma.shape == (11,)
        assert np.all(state.sigma == 0)

    def test_broadcasts_over_probes(self, calibrated_subsystem):
        """Test vectorized evaluation matches pointwise evaluation."""
        probes = np.array([-30.0, 0.0, 12.5])
        batch = steady_state(calibrated_subsystem, probes)

        for index, probe in enumerate(probes):
            single = steady_state(calibrated_subsystem, probe)
            expected = complex(single.B)
            assert complex(batch.B[index]) == pytest.approx(expected, rel=1e-13)

    def test_mode_populations(self, calibrated_subsystem):
        """Test populations are squared magnitudes of the modes."""
        state = steady_state(calibrated_subsystem, 5.0)
        pop_a, pop_b = mode_populations(calibrated_subsystem, 5.0)

        assert float(pop_a) == pytest.approx(abs(complex(state.A)) ** 2)
        assert float(pop_b) == pytest.approx(abs(complex(state.B)) ** 2)

    @given(subsystems(), st.floats(min_value=-200.0, max_value=200.0))
    @settings(max_examples=200, deadline=None)
    def test_linearity(self, sub, probe):
        """Test that doubling the drive doubles every field."""
        single = steady_state(sub, probe, 0.3 - 0.2j, 0.1j)
        double = steady_state(sub, probe, 0.6 - 0.4j, 0.2j)

        for first, second in ((single.A, double.A), (single.B, double.B)):
            assert abs(complex(second) - 2 * complex(first)) <= 1e-9 * (
                1 + abs(complex(second))
            )


class TestScatteringAmplitudes:
    """Test subsystem transmission and reflection."""

    def test_lossless_empty_cavity_conserves_flux(self, lossless_cavity):
        """Test |t|^2 + |r|^2 = 1 without loss or atom."""
        resp = scattering_amplitudes(lossless_cavity, np.linspace(-20, 20, 401))
        total = np.abs(resp.t) ** 2 + np.abs(resp.r) ** 2

        assert np.max(np.abs(total - 1.0)) < 1e-12

    def test_calibrated_empty_cavity_is_opaque_at_zero(self, calibrated_cavity):
        """Test the calibration makes t(0) vanish for an empty cavity."""
        resp = scattering_amplitudes(SubsystemParams(cavity=calibrated_cavity), 0.0)

        assert abs(complex(resp.t)) < 1e-12

    def test_far_detuned_cavity_transmits(self, calibrated_subsystem):
        """Test that far off resonance the fiber passes the probe."""
        resp = scattering_amplitudes(calibrated_subsystem, 1e6)

        assert abs(complex(resp.t)) == pytest.approx(1.0, abs=1e-3)
        assert abs(complex(resp.r)) < 1e-3

    @given(single_mode_subsystems(), st.floats(min_value=-300.0, max_value=300.0))
    @settings(max_examples=200, deadline=None)
    def test_single_mode_coupling_is_symmetric(self, sub, probe):
        """Test a drive from the right sees the same t and r."""
        resp = scattering_amplitudes(sub, probe)

        backward = steady_state(sub, probe, 0.0, 1.0)
        a_out, b_out = port_outputs(sub, backward, 0.0, 1.0)

        assert abs(complex(b_out) - complex(resp.t)) <= 1e-12
        assert abs(complex(a_out) - complex(resp.r)) <= 1e-12

    @given(subsystems(with_atom=False), offsets, rates)
    @settings(max_examples=100, deadline=None)
    def test_uncoupled_atom_matches_empty_cavity(self, sub, atom_offset, gamma):
        """Test an atom with g_A = g_B = 0 leaves t and r unchanged."""
        probes = np.linspace(-150.0, 150.0, 61)
        loaded = replace(sub, atom=AtomParams(delta0=atom_offset, gamma=gamma))

        empty = scattering_amplitudes(sub, probes)
        uncoupled = scattering_amplitudes(loaded, probes)

        assert np.max(np.abs(uncoupled.t - empty.t)) < 1e-13
        assert np.max(np.abs(uncoupled.r - empty.r)) < 1e-13
        assert np.max(np.abs(uncoupled.r_reverse - empty.r_reverse)) < 1e-13
        assert np.all(uncoupled.state.sigma == 0)

    def test_two_mode_coupling_reciprocal_transmission(self, asymmetric_chain):
        """Test t is the same from both ends while r generally differs."""
        sub = asymmetric_chain.subsystems[0]
        probes = np.linspace(-10, 10, 41)
        resp = scattering_amplitudes(sub, probes)

        backward = steady_state(sub, probes, 0.0, 1.0)
        r_reverse, t_reverse = port_outputs(sub, backward, 0.0, 1.0)

        assert np.allclose(t_reverse, resp.t, rtol=1e-12, atol=1e-14)
        assert np.allclose(r_reverse, resp.r_reverse, rtol=1e-12, atol=1e-14)
        assert not resp.symmetric

    @given(subsystems(), st.floats(min_value=-300.0, max_value=300.0))
    @settings(max_examples=300, deadline=None)
    def test_passivity(self, sub, probe):
        """Test |t|^2 + |r|^2 <= 1 for any valid subsystem."""
        resp = scattering_amplitudes(sub, probe)

        T = abs(complex(resp.t)) ** 2
        assert T + abs(complex(resp.r)) ** 2 <= 1 + 1e-12
        assert T + abs(complex(resp.r_reverse)) ** 2 <= 1 + 1e-12

    @given(subsystems(with_atom=False), st.floats(min_value=-300.0, max_value=300.0))
    @settings(max_examples=100, deadline=None)
    def test_empty_cavity_symmetric(self, sub, probe):
        """Test that an empty cavity reflects equally from both sides."""
        assert scattering_amplitudes(sub, probe).symmetric


class TestExcitationGuard:
    """Test the weak-excitation diagnostic."""

    def test_flags_strong_drive(self, calibrated_subsystem):
        """Test that a strong resonant drive is flagged."""
        weak = excitation_guard(calibrated_subsystem, 0.0, (0.001, 0.0))
        strong = excitation_guard(calibrated_subsystem, 0.0, (100.0, 0.0))

        assert not bool(weak.saturated)
        assert bool(strong.saturated)

    def test_excitation_scales_with_drive_squared(self, calibrated_subsystem):
        """Test |sigma|^2 is quadratic in the drive amplitude."""
        unit = excitation_guard(calibrated_subsystem, 3.0, (1.0, 0.0))
        half = excitation_guard(calibrated_subsystem, 3.0, (0.5, 0.0))

        assert float(half.excitation) == pytest.approx(float(unit.excitation) / 4)
