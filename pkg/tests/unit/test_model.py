"""Unit tests for domain types, validation and builders."""

import math

import pytest

from cavity_chain.model import (
    AtomParams,
    CavityParams,
    ChainSpec,
    InvalidChainError,
    ScanGrid,
    SubsystemParams,
    atom_masks,
    calibrated_kappa_ex,
    configuration_label,
    uniform_chain,
    validate,
    validate_grid,
    with_atoms,
)


class TestChainSpec:
    """Test ChainSpec properties."""

    def test_phases_use_fractional_length(self):
        """Test that only the fractional part of a length sets the phase."""
        sub = SubsystemParams(cavity=CavityParams())
        spec = ChainSpec(subsystems=(sub, sub, sub), lengths=(100.25, 3.5))

        assert spec.phases[0] == pytest.approx(math.pi / 2)
        assert spec.phases[1] == pytest.approx(math.pi)

    def test_mirrored_reverses_subsystems_and_lengths(self, asymmetric_chain):
        """Test mirroring a chain."""
        mirrored = asymmetric_chain.mirrored()

        assert mirrored.subsystems == tuple(reversed(asymmetric_chain.subsystems))
        assert mirrored.lengths == tuple(reversed(asymmetric_chain.lengths))
        assert mirrored.mirrored() == asymmetric_chain

    def test_with_lengths_returns_new_spec(self, two_cavity_chain):
        """Test replacing segment lengths."""
        changed = two_cavity_chain.with_lengths([100.0])

        assert changed.lengths == (100.0,)
        assert two_cavity_chain.lengths == (100.15,)

    def test_total_loss(self):
        """Test kappa = kappa_i + kappa_ex."""
        assert CavityParams(kappa_ex=2.0, kappa_i=0.5).kappa == 2.5

    def test_single_mode_coupling(self):
        """Test detection of an atom coupling to one normal mode."""
        assert AtomParams(g_a=0.0, g_b=3.0).couples_single_mode
        assert not AtomParams(g_a=1.0, g_b=3.0).couples_single_mode


class TestValidate:
    """Test chain validation."""

    def test_valid_chain(self, two_cavity_chain):
        """Test that a calibrated chain is valid."""
        report = validate(two_cavity_chain)

        assert report.ok
        assert report.violations == []

    def test_lengths_count_mismatch(self, calibrated_subsystem):
        """Test that lengths.count must equal N - 1."""
        spec = ChainSpec(subsystems=(calibrated_subsystem,) * 3, lengths=(100.0,))
        report = validate(spec)

        assert not report.ok
        assert "chain.lengths" in report.paths()
        assert report.violations[0].message == "lengths.count ≠ N−1"

    def test_empty_chain(self):
        """Test that a chain needs a subsystem."""
        report = validate(ChainSpec(subsystems=()))

        assert "chain.subsystems" in report.paths()

    def test_non_positive_length(self, calibrated_subsystem):
        """Test that segment lengths must be positive."""
        spec = ChainSpec(subsystems=(calibrated_subsystem,) * 2, lengths=(0.0,))

        assert validate(spec).paths() == ["chain.lengths[0]"]

    def test_negative_rates(self):
        """Test that negative rates are reported with their field paths."""
        sub = SubsystemParams(
            cavity=CavityParams(h=-1.0, kappa_ex=1.0, kappa_i=-0.5),
            atom=AtomParams(gamma=0.0, g_a=-1.0),
        )
        paths = validate(ChainSpec(subsystems=(sub,))).paths()

        assert "chain.subsystems[0].cavity.h" in paths
        assert "chain.subsystems[0].cavity.kappa_i" in paths
        assert "chain.subsystems[0].atom.gamma" in paths
        assert "chain.subsystems[0].atom.g_A" in paths

    def test_zero_total_loss(self):
        """Test that kappa must be positive."""
        sub = SubsystemParams(cavity=CavityParams(kappa_ex=0.0, kappa_i=0.0))

        report = validate(ChainSpec(subsystems=(sub,)))
        assert "chain.subsystems[0].cavity" in report.paths()

    def test_non_finite_values(self):
        """Test that NaN and infinity are rejected."""
        sub = SubsystemParams(
            cavity=CavityParams(delta0=math.nan),
            atom=AtomParams(g_b=math.inf),
        )
        paths = validate(ChainSpec(subsystems=(sub,))).paths()

        assert "chain.subsystems[0].cavity.delta0" in paths
        assert "chain.subsystems[0].atom.g_B" in paths

    def test_validate_does_not_modify(self, two_cavity_chain):
        """Test that validation leaves the chain untouched."""
        before = two_cavity_chain
        validate(two_cavity_chain)

        assert two_cavity_chain == before


class TestValidateGrid:
    """Test scan grid validation."""

    def test_valid_grid(self, coarse_grid):
        """Test a valid grid."""
        assert validate_grid(coarse_grid).ok

    def test_decreasing_grid(self):
        """Test that stop must exceed start."""
        assert validate_grid(ScanGrid(1.0, 0.0, 10)).paths() == ["scan.stop"]

    def test_too_few_points(self):
        """Test that a grid needs two points."""
        assert validate_grid(ScanGrid(0.0, 1.0, 1)).paths() == ["scan.points"]

    def test_window_mask(self):
        """Test grid windows are inclusive."""
        grid = ScanGrid(0.0, 10.0, 11)
        mask = grid.window(2.0, 4.0)

        assert list(grid.values()[mask]) == [2.0, 3.0, 4.0]
        assert grid.step == 1.0


class TestBuilders:
    """Test chain builders."""

    def test_uniform_chain(self, calibrated_subsystem):
        """Test building a uniform chain."""
        spec = uniform_chain(4, calibrated_subsystem, 100.2)

        assert spec.size == 4
        assert spec.lengths == (100.2, 100.2, 100.2)
        assert validate(spec).ok

    def test_uniform_chain_single(self, calibrated_subsystem):
        """Test that one subsystem has no segments."""
        assert uniform_chain(1, calibrated_subsystem, 10.0).lengths == ()

    @pytest.mark.parametrize(
        "n,length", [(0, 100.0), (2, 0.0), (2, -1.0), (2, math.nan)]
    )
    def test_uniform_chain_rejects(self, calibrated_subsystem, n, length):
        """Test invalid uniform chain arguments."""
        with pytest.raises(InvalidChainError):
            uniform_chain(n, calibrated_subsystem, length)

    def test_invalid_chain_error_is_value_error(self, calibrated_subsystem):
        """Test that InvalidChainError is also a ValueError."""
        with pytest.raises(ValueError):
            uniform_chain(0, calibrated_subsystem, 1.0)

    def test_calibrated_kappa_ex(self):
        """Test the calibration rule."""
        assert calibrated_kappa_ex(3.0, 4.0) == pytest.approx(5.0)
        assert calibrated_kappa_ex(50.0, 7.0) == pytest.approx(50.48762225)

    def test_with_atoms(self, two_cavity_chain):
        """Test removing the atom from one cavity."""
        spec = with_atoms(two_cavity_chain, (True, False))

        assert spec.subsystems[0].atom is not None
        assert spec.subsystems[1].atom is None
        assert spec.subsystems[1].cavity == two_cavity_chain.subsystems[1].cavity

    def test_with_atoms_mask_length(self, two_cavity_chain):
        """Test that the mask must match the chain size."""
        with pytest.raises(InvalidChainError):
            with_atoms(two_cavity_chain, (True,))

    def test_atom_masks(self, two_cavity_chain):
        """Test enumeration of all on/off patterns."""
        masks = list(atom_masks(two_cavity_chain))

        assert masks == [(False, False), (False, True), (True, False), (True, True)]

    def test_atom_masks_skip_empty_cavities(self, calibrated_subsystem):
        """Test that empty cavities stay empty in every pattern."""
        spec = ChainSpec(
            subsystems=(calibrated_subsystem, calibrated_subsystem.without_atom()),
            lengths=(100.0,),
        )

        assert list(atom_masks(spec)) == [(False, False), (True, False)]

    @pytest.mark.parametrize(
        "mask,label",
        [((False, False), "none"), ((True, False), "1"), ((True, True), "1+2")],
    )
    def test_configuration_label(self, mask, label):
        """Test readable configuration labels."""
        assert configuration_label(mask) == label
