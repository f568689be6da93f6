"""Unit tests for transfer-matrix composition."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cavity_chain.model import (
    AtomParams,
    CavityParams,
    ChainSpec,
    DegenerateChainError,
    DriveSide,
    OpaqueSubsystemError,
    SubsystemParams,
    uniform_chain,
)
from cavity_chain.solvers import (
    TransferMatrix,
    cavity_fields,
    compose,
    from_scattering,
    independent_transmission,
    propagation,
    response,
    scattering_amplitudes,
    solve_full,
)
from cavity_chain.solvers.resonator import ScatteringResponse, SteadyState


def _response_at(spec, probe):
    return response(compose(spec, probe), spec.drive)


def _reflectionless(t):
    state = SteadyState(A=np.zeros(1), B=np.zeros(1), sigma=np.zeros(1))
    zero = np.zeros_like(t)
    return ScatteringResponse(t=t, r=zero, r_reverse=zero, state=state)


class TestTransferMatrix:
    """Test element transfer matrices."""

    def test_subsystem_unit_determinant(self, asymmetric_chain):
        """Test det M = 1 for a subsystem with r_reverse != r."""
        probes = np.linspace(-20, 20, 81)
        matrix = from_scattering(
            scattering_amplitudes(asymmetric_chain.subsystems[0], probes)
        )

        assert np.max(np.abs(matrix.det - 1.0)) < 1e-12

    def test_propagation(self):
        """Test the segment matrix and its determinant."""
        matrix = propagation(math.pi / 3)

        assert complex(matrix.m11) == pytest.approx(np.exp(1j * math.pi / 3))
        assert complex(matrix.m22) == pytest.approx(np.exp(-1j * math.pi / 3))
        assert complex(matrix.m12) == 0
        assert abs(complex(matrix.det) - 1) < 1e-15

    def test_single_subsystem_recovers_amplitudes(self, calibrated_subsystem):
        """Test that a one-element chain reproduces t and r."""
        spec = ChainSpec(subsystems=(calibrated_subsystem,))
        probes = np.array([-40.0, 5.0, 60.0])
        resp = scattering_amplitudes(calibrated_subsystem, probes)
        chain = _response_at(spec, probes)

        assert np.allclose(chain.t_total, resp.t, rtol=1e-12)
        assert np.allclose(chain.r_total, resp.r, rtol=1e-12)

    def test_opaque_subsystem_raises(self, calibrated_cavity):
        """Test the |t| gate names the opaque subsystem."""
        empty = SubsystemParams(cavity=calibrated_cavity)
        spec = ChainSpec(
            subsystems=(SubsystemParams(cavity=CavityParams(kappa_ex=1.0)), empty),
            lengths=(10.0,),
        )

        with pytest.raises(OpaqueSubsystemError) as exc_info:
            compose(spec, 0.0, epsilon=1e-9)

        assert exc_info.value.index == 1

    def test_degenerate_response_raises(self):
        """Test that a vanishing m22 is reported."""
        matrix = TransferMatrix.from_entries(1.0, 0.0, 0.0, 0.0)

        with pytest.raises(DegenerateChainError):
            response(matrix)

    def test_broadcast_stack_shape(self, two_cavity_chain):
        """Test array probes produce a stack of matrices."""
        total = compose(two_cavity_chain, np.linspace(10, 20, 7))

        assert total.data.shape == (7, 2, 2)


class TestChainResponse:
    """Test end-to-end chain response."""

    def test_lossless_chain_conserves_flux(self, lossless_cavity):
        """Test |T + R - 1| < 1e-12 for atom-free lossless chains."""
        other = SubsystemParams(cavity=CavityParams(delta0=2.0, h=1.0, kappa_ex=4.0))
        spec = ChainSpec(
            subsystems=(lossless_cavity, other, lossless_cavity),
            lengths=(100.3, 57.81),
        )
        chain = _response_at(spec, np.linspace(-30, 30, 601))

        assert np.max(np.abs(chain.T + chain.R - 1.0)) < 1e-12

    def test_total_unit_determinant(self, asymmetric_chain):
        """Test det M_total = 1."""
        total = compose(asymmetric_chain, np.linspace(-15, 15, 61))

        assert np.max(np.abs(total.det - 1.0)) < 1e-12

    def test_reflectionless_chain_has_no_superness(self):
        """Test T equals the product of |t_n|^2 when every r_n = 0."""
        t = np.exp(1j * np.linspace(0, 3, 50)) * np.linspace(0.2, 0.9, 50)
        matrices = [from_scattering(_reflectionless(t * f)) for f in (1.0, 0.8, 0.5)]
        total = (
            matrices[2]
            @ propagation(0.7)
            @ matrices[1]
            @ propagation(2.1)
            @ matrices[0]
        )
        chain = response(total)

        expected = np.abs(t) ** 2 * np.abs(0.8 * t) ** 2 * np.abs(0.5 * t) ** 2
        assert np.max(np.abs(chain.T - expected)) < 1e-12

    def test_swap_keeps_transmission(self, calibrated_subsystem):
        """Test exchanging two different subsystems of an N = 2 chain keeps T."""
        other = SubsystemParams(
            cavity=CavityParams(delta0=3.0, h=20.0, kappa_ex=15.0, kappa_i=2.0),
            atom=AtomParams(gamma=1.0, g_b=25.0),
        )
        spec = ChainSpec(subsystems=(calibrated_subsystem, other), lengths=(100.3,))
        swapped = spec.with_subsystems((other, calibrated_subsystem))
        probes = np.linspace(-60, 60, 241)

        original = _response_at(spec, probes)
        exchanged = _response_at(swapped, probes)

        rel = np.abs(original.T - exchanged.T) / np.maximum(original.T, 1e-300)
        assert np.max(rel) < 1e-12
        assert np.max(np.abs(original.R - exchanged.R)) > 0.01

    def test_full_reversal_keeps_transmission(self, calibrated_subsystem):
        """Test a chain and its mirror image transmit identically."""
        other = SubsystemParams(
            cavity=CavityParams(h=10.0, kappa_ex=20.0, kappa_i=1.0),
            atom=AtomParams(gamma=1.0, g_b=30.0),
        )
        spec = ChainSpec(
            subsystems=(calibrated_subsystem, other, calibrated_subsystem, other),
            lengths=(100.1, 80.35, 120.9),
        )
        probes = np.linspace(-60, 60, 121)

        forward = _response_at(spec, probes)
        reversed_ = _response_at(spec.mirrored(), probes)

        rel = np.abs(forward.T - reversed_.T) / np.maximum(forward.T, 1e-300)
        assert np.max(rel) < 1e-10

    def test_right_drive_matches_mirrored_chain(self, two_cavity_chain):
        """Test driving from the right equals driving the mirror from the left."""
        probes = np.linspace(-50, 50, 101)
        right = _response_at(
            ChainSpec(
                subsystems=two_cavity_chain.subsystems,
                lengths=two_cavity_chain.lengths,
                drive=DriveSide.RIGHT,
            ),
            probes,
        )
        mirrored = _response_at(two_cavity_chain.mirrored(), probes)

        assert np.allclose(right.T, mirrored.T, rtol=1e-10, atol=1e-14)
        assert np.allclose(right.R, mirrored.R, rtol=1e-10, atol=1e-14)

    def test_independent_transmission(self, two_cavity_chain):
        """Test T_ind is the product of subsystem transmissions."""
        probes = np.array([-20.0, 30.0])
        t = scattering_amplitudes(two_cavity_chain.subsystems[0], probes).t

        assert np.allclose(
            independent_transmission(two_cavity_chain, probes), np.abs(t) ** 4
        )

    def test_integer_length_change_is_invisible(self, two_cavity_chain):
        """Test lengths differing by whole wavelengths give the same response."""
        probes = np.linspace(-80, 80, 33)
        base = _response_at(two_cavity_chain, probes)
        longer = _response_at(two_cavity_chain.with_lengths([103.15]), probes)

        assert np.allclose(base.T, longer.T, rtol=1e-9)

    @given(
        st.floats(min_value=1.0, max_value=50.0),
        st.floats(min_value=0.0, max_value=20.0),
        st.floats(min_value=50.0, max_value=200.0),
        st.floats(min_value=-100.0, max_value=100.0),
    )
    @settings(max_examples=150, deadline=None)
    def test_passive_chain(self, kappa_ex, kappa_i, length, probe):
        """Test T + R <= 1 for passive chains."""
        sub = SubsystemParams(
            cavity=CavityParams(h=5.0, kappa_ex=kappa_ex, kappa_i=kappa_i),
            atom=AtomParams(gamma=1.0, g_a=2.0, g_b=7.0),
        )
        chain = _response_at(uniform_chain(3, sub, length), probe)

        assert float(chain.T + chain.R) <= 1 + 1e-12


class TestCavityFields:
    """Test per-cavity field reconstruction."""

    def test_matches_direct_solve(self, two_cavity_chain):
        """Test transfer-path populations agree with the full solve."""
        probe = 12.4
        fields = cavity_fields(two_cavity_chain, probe)
        full = solve_full(two_cavity_chain, probe)

        for index, field in enumerate(fields):
            expected = (full.A[index], full.B[index], full.a_in[index])
            actual = (field.state.A, field.state.B, field.a_in)
            for got, want in zip(actual, expected):
                assert complex(got) == pytest.approx(complex(want), rel=1e-9)

    def test_first_cavity_input_is_drive(self, two_cavity_chain):
        """Test the left cavity sees the unit drive."""
        fields = cavity_fields(two_cavity_chain, np.array([0.5, 40.0]))

        assert np.allclose(fields[0].a_in, 1.0)
        assert np.allclose(fields[-1].b_in, 0.0, atol=1e-12)
