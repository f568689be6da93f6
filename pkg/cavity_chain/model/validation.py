"""Invariant checks for chains and scan grids."""

import math

import structlog

from .types import ChainSpec, ScanGrid, SubsystemParams, ValidationReport

logger = structlog.get_logger(__name__)

# attribute name, scenario key
_ATOM_FIELDS = (
    ("delta0", "Delta0"),
    ("gamma", "gamma"),
    ("g_a", "g_A"),
    ("g_b", "g_B"),
)


def _finite(value: float) -> bool:
    return isinstance(value, int | float) and math.isfinite(value)


def _check_subsystem(
    report: ValidationReport, sub: SubsystemParams, prefix: str
) -> None:
    cavity = sub.cavity
    for name in ("delta0", "h", "kappa_ex", "kappa_i"):
        if not _finite(getattr(cavity, name)):
            report.add(f"{prefix}.cavity.{name}", "must be a finite number")

    if _finite(cavity.h) and cavity.h < 0:
        report.add(f"{prefix}.cavity.h", "must be >= 0")
    if _finite(cavity.kappa_ex) and cavity.kappa_ex < 0:
        report.add(f"{prefix}.cavity.kappa_ex", "must be >= 0")
    if _finite(cavity.kappa_i) and cavity.kappa_i < 0:
        report.add(f"{prefix}.cavity.kappa_i", "must be >= 0")
    if _finite(cavity.kappa) and cavity.kappa <= 0:
        report.add(f"{prefix}.cavity", "total loss must be positive")

    atom = sub.atom
    if atom is None:
        return

    for name, key in _ATOM_FIELDS:
        if not _finite(getattr(atom, name)):
            report.add(f"{prefix}.atom.{key}", "must be a finite number")

    if _finite(atom.gamma) and atom.gamma <= 0:
        report.add(f"{prefix}.atom.gamma", "must be > 0")
    if _finite(atom.g_a) and atom.g_a < 0:
        report.add(f"{prefix}.atom.g_A", "must be >= 0")
    if _finite(atom.g_b) and atom.g_b < 0:
        report.add(f"{prefix}.atom.g_B", "must be >= 0")


def validate(spec: ChainSpec, prefix: str = "chain") -> ValidationReport:
    """Check a chain against the model invariants.

    Args:
        spec: Chain to check (not modified)
        prefix: Root of the reported field paths

    Returns:
        Report listing every violated invariant; empty when the chain is valid
    """
    report = ValidationReport()

    if len(spec.subsystems) < 1:
        report.add(f"{prefix}.subsystems", "at least one subsystem is required")

    if len(spec.lengths) != max(len(spec.subsystems) - 1, 0):
        report.add(f"{prefix}.lengths", "lengths.count ≠ N−1")

    for index, length in enumerate(spec.lengths):
        if not _finite(length):
            report.add(f"{prefix}.lengths[{index}]", "must be a finite number")
        elif length <= 0:
            report.add(f"{prefix}.lengths[{index}]", "must be > 0")

    for index, sub in enumerate(spec.subsystems):
        _check_subsystem(report, sub, f"{prefix}.subsystems[{index}]")

    if not report.ok:
        logger.debug("Chain failed validation", violations=report.paths())

    return report


def validate_grid(grid: ScanGrid, prefix: str = "scan") -> ValidationReport:
    """Check that a scan grid is finite, increasing and has at least two points."""
    report = ValidationReport()

    if not (_finite(grid.start) and _finite(grid.stop)):
        report.add(prefix, "start and stop must be finite numbers")
    elif grid.stop <= grid.start:
        report.add(f"{prefix}.stop", "must be greater than scan.start")

    if grid.points < 2:
        report.add(f"{prefix}.points", "must be >= 2")

    return report
