"""Direct solution of the fully coupled chain.

All cavities, atoms and fiber links are assembled into one dense complex
linear system and solved by LU decomposition with partial pivoting. Unknowns
per cavity n, in order: A_n, B_n, sigma_n (only when an atom is present),
a_in_n, b_in_n. Rows per cavity: the mode equations, the atom equation, and
the two link relations

    a_in_n = exp(i phi_(n-1)) a_out_(n-1)     (a_in_1 = left drive)
    b_in_n = exp(i phi_n) b_out_(n+1)         (b_in_N = right drive)

with a_out, b_out eliminated through the input-output relations.
"""

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import structlog
from numpy.typing import NDArray

from ..model.errors import SingularSystemError
from ..model.types import ChainSpec, DriveSide, ScanGrid
from .chain import (
    DEFAULT_EPSILON_T,
    TransferMatrix,
    compose,
    opaque_mask,
    response,
    subsystem_responses,
)
from .resonator import SQRT2, ComplexArray, FloatArray

logger = structlog.get_logger(__name__)

CONDITION_WARNING = 1e12
RESIDUAL_LIMIT = 1e-10
DISCREPANCY_FLOOR = 1e-14


@dataclass(frozen=True)
class FullSolution:
    """All fields of the driven chain at one probe detuning."""

    A: ComplexArray
    B: ComplexArray
    sigma: ComplexArray
    a_in: ComplexArray
    b_in: ComplexArray
    a_out: ComplexArray
    b_out: ComplexArray
    T: float
    R: float
    condition: float
    residual: float

    @property
    def excitations(self) -> FloatArray:
        return np.abs(self.sigma) ** 2

    @property
    def max_excitation(self) -> float:
        return float(np.max(self.excitations))

    @property
    def ill_conditioned(self) -> bool:
        return self.condition > CONDITION_WARNING


@dataclass
class DiscrepancyReport:
    """Transfer-matrix versus direct-solve comparison over a grid."""

    detuning: FloatArray
    T_transfer: FloatArray
    R_transfer: FloatArray
    T_oracle: FloatArray
    R_oracle: FloatArray
    tolerance: float
    unavailable: NDArray[np.bool_]
    max_excitation: FloatArray
    rel_T: FloatArray = field(init=False)
    rel_R: FloatArray = field(init=False)

    def __post_init__(self) -> None:
        self.rel_T = relative_discrepancy(self.T_transfer, self.T_oracle)
        self.rel_R = relative_discrepancy(self.R_transfer, self.R_oracle)
        self.rel_T[self.unavailable] = 0.0
        self.rel_R[self.unavailable] = 0.0

    @property
    def flagged(self) -> NDArray[np.bool_]:
        return (self.rel_T > self.tolerance) | (self.rel_R > self.tolerance)

    @property
    def max_T(self) -> float:
        return float(np.max(self.rel_T)) if self.rel_T.size else 0.0

    @property
    def max_R(self) -> float:
        return float(np.max(self.rel_R)) if self.rel_R.size else 0.0

    @property
    def mean_T(self) -> float:
        available = ~self.unavailable
        return float(np.mean(self.rel_T[available])) if available.any() else 0.0

    @property
    def mean_R(self) -> float:
        available = ~self.unavailable
        return float(np.mean(self.rel_R[available])) if available.any() else 0.0

    @property
    def passed(self) -> bool:
        return not bool(np.any(self.flagged))

    def summary(self) -> dict[str, float | int | bool]:
        return {
            "max_rel_T": self.max_T,
            "max_rel_R": self.max_R,
            "mean_rel_T": self.mean_T,
            "mean_rel_R": self.mean_R,
            "flagged_points": int(np.count_nonzero(self.flagged)),
            "unavailable_points": int(np.count_nonzero(self.unavailable)),
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def relative_discrepancy(x: FloatArray, y: FloatArray) -> FloatArray:
    """|x - y| / max(|x|, |y|, floor), elementwise."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    scale = np.maximum(np.maximum(np.abs(x), np.abs(y)), DISCREPANCY_FLOOR)
    return np.abs(x - y) / scale


def _layout(spec: ChainSpec) -> list[dict[str, int]]:
    """Column index of every unknown, cavity by cavity."""
    columns: list[dict[str, int]] = []
    cursor = 0
    for sub in spec.subsystems:
        sigma = ["sigma"] if sub.atom is not None else []
        names = ["A", "B", *sigma, "a_in", "b_in"]
        columns.append({name: cursor + offset for offset, name in enumerate(names)})
        cursor += len(names)
    return columns


def assemble(
    spec: ChainSpec, probe: float, drive: tuple[complex, complex] = (1.0, 0.0)
) -> tuple[ComplexArray, ComplexArray, list[dict[str, int]]]:
    """Build the dense system matrix and right-hand side.

    Rows are emitted in a fixed order so the matrix is reproducible.
    """
    columns = _layout(spec)
    size = sum(len(c) for c in columns)
    matrix = np.zeros((size, size), dtype=np.complex128)
    rhs = np.zeros(size, dtype=np.complex128)
    phases = spec.phases
    count = spec.size

    couplings = [math.sqrt(2.0 * sub.cavity.kappa_ex) for sub in spec.subsystems]
    row = 0
    for n, sub in enumerate(spec.subsystems):
        col = columns[n]
        cavity = sub.cavity
        delta = cavity.delta0 + probe
        c = couplings[n]

        # 0 = -[i(delta+h) + kappa] A + c (a_in + b_in)/sqrt2 - i g_A sigma
        matrix[row, col["A"]] = -(1j * (delta + cavity.h) + cavity.kappa)
        matrix[row, col["a_in"]] += c / SQRT2
        matrix[row, col["b_in"]] += c / SQRT2
        if sub.atom is not None:
            matrix[row, col["sigma"]] = -1j * sub.atom.g_a
        row += 1

        # 0 = -[i(delta-h) + kappa] B + c (a_in - b_in)/sqrt2 - g_B sigma
        matrix[row, col["B"]] = -(1j * (delta - cavity.h) + cavity.kappa)
        matrix[row, col["a_in"]] += c / SQRT2
        matrix[row, col["b_in"]] -= c / SQRT2
        if sub.atom is not None:
            matrix[row, col["sigma"]] = -sub.atom.g_b
        row += 1

        if sub.atom is not None:
            atom = sub.atom
            matrix[row, col["A"]] = -1j * atom.g_a
            matrix[row, col["B"]] = atom.g_b
            matrix[row, col["sigma"]] = -(1j * (atom.delta0 + probe) + atom.gamma)
            row += 1

        # a_in_n - e^{i phi} (-a_in_(n-1) + c_(n-1) (A + B)/sqrt2) = 0
        matrix[row, col["a_in"]] = 1.0
        if n == 0:
            rhs[row] = drive[0]
        else:
            prev = columns[n - 1]
            link = np.exp(1j * phases[n - 1])
            matrix[row, prev["a_in"]] += link
            matrix[row, prev["A"]] -= link * couplings[n - 1] / SQRT2
            matrix[row, prev["B"]] -= link * couplings[n - 1] / SQRT2
        row += 1

        # b_in_n - e^{i phi} (-b_in_(n+1) + c_(n+1) (A - B)/sqrt2) = 0
        matrix[row, col["b_in"]] = 1.0
        if n == count - 1:
            rhs[row] = drive[1]
        else:
            nxt = columns[n + 1]
            link = np.exp(1j * phases[n])
            matrix[row, nxt["b_in"]] += link
            matrix[row, nxt["A"]] -= link * couplings[n + 1] / SQRT2
            matrix[row, nxt["B"]] += link * couplings[n + 1] / SQRT2
        row += 1

    return matrix, rhs, columns


def solve_full(
    spec: ChainSpec,
    probe: float,
    drive: tuple[complex, complex] = (1.0, 0.0),
    condition_warning: float = CONDITION_WARNING,
    residual_limit: float = RESIDUAL_LIMIT,
) -> FullSolution:
    """Solve the complete coupled steady state at one probe detuning.

    Args:
        spec: Validated chain
        probe: Probe detuning in units of gamma
        drive: Input amplitudes (a_in at cavity 1, b_in at cavity N)
        condition_warning: Condition number above which the result is flagged
        residual_limit: Largest accepted relative residual of the solve

    Returns:
        Every internal and port field plus T, R and solver diagnostics

    Raises:
        SingularSystemError: If the system matrix is singular or the solve
            leaves a relative residual above ``residual_limit``
    """
    matrix, rhs, columns = assemble(spec, float(probe), drive)
    condition = float(np.linalg.cond(matrix))

    if not np.isfinite(condition):
        raise SingularSystemError("coupled chain system is singular", condition)

    lu, piv = scipy.linalg.lu_factor(matrix, check_finite=True)
    if np.any(np.diag(lu) == 0):
        raise SingularSystemError("coupled chain system is singular", condition)
    solution = scipy.linalg.lu_solve((lu, piv), rhs)

    scale = np.linalg.norm(matrix) * np.linalg.norm(solution) + np.linalg.norm(rhs)
    residual = float(np.linalg.norm(matrix @ solution - rhs) / scale) if scale else 0.0
    if residual > residual_limit:
        raise SingularSystemError(
            f"relative residual {residual:.3g} exceeds {residual_limit:.3g}", condition
        )

    if condition > condition_warning:
        logger.warning(
            "Ill-conditioned chain system",
            probe=float(probe),
            condition=condition,
            threshold=condition_warning,
        )

    def pick(name: str) -> ComplexArray:
        return np.array(
            [solution[c[name]] if name in c else 0.0 for c in columns],
            dtype=np.complex128,
        )

    modes_a, modes_b, sigma = pick("A"), pick("B"), pick("sigma")
    a_in, b_in = pick("a_in"), pick("b_in")
    couplings = np.array([math.sqrt(2.0 * s.cavity.kappa_ex) for s in spec.subsystems])
    a_out = -a_in + couplings * (modes_a + modes_b) / SQRT2
    b_out = -b_in + couplings * (modes_a - modes_b) / SQRT2

    left, right = drive
    if left != 0:
        transmission = abs(a_out[-1]) ** 2 / abs(left) ** 2
        reflection = abs(b_out[0]) ** 2 / abs(left) ** 2
    elif right != 0:
        transmission = abs(b_out[0]) ** 2 / abs(right) ** 2
        reflection = abs(a_out[-1]) ** 2 / abs(right) ** 2
    else:
        transmission = reflection = 0.0

    return FullSolution(
        A=modes_a,
        B=modes_b,
        sigma=sigma,
        a_in=a_in,
        b_in=b_in,
        a_out=a_out,
        b_out=b_out,
        T=float(transmission),
        R=float(reflection),
        condition=condition,
        residual=residual,
    )


def drive_for(spec: ChainSpec) -> tuple[complex, complex]:
    """Unit drive at the end of the chain selected by ``spec.drive``."""
    return (1.0, 0.0) if spec.drive is DriveSide.LEFT else (0.0, 1.0)


def compare_with_transfer(
    spec: ChainSpec,
    grid: ScanGrid,
    tolerance: float = 1e-9,
    epsilon: float = DEFAULT_EPSILON_T,
    condition_warning: float = CONDITION_WARNING,
) -> DiscrepancyReport:
    """Compare transfer-matrix (T, R) with the direct solve over a grid.

    Points where a subsystem fails the opacity gate, or where the composed
    matrix has a vanishing m22, are marked unavailable rather than compared.
    """
    probes = grid.values()
    responses = subsystem_responses(spec, probes)
    unavailable = opaque_mask(spec, probes, epsilon, responses)

    T_transfer = np.full(probes.shape, np.nan)
    R_transfer = np.full(probes.shape, np.nan)
    available = np.flatnonzero(~unavailable)
    if available.size:
        total = compose(spec, probes[available], epsilon)
        degenerate = np.abs(total.m22) < epsilon
        unavailable[available[degenerate]] = True
        kept = available[~degenerate]
        if kept.size:
            chain = response(
                TransferMatrix(total.data[~degenerate]), spec.drive, epsilon
            )
            T_transfer[kept] = chain.T
            R_transfer[kept] = chain.R

    T_oracle = np.empty(probes.shape)
    R_oracle = np.empty(probes.shape)
    max_excitation = np.empty(probes.shape)
    drive = drive_for(spec)
    for index, probe in enumerate(probes):
        solution = solve_full(spec, float(probe), drive, condition_warning)
        T_oracle[index] = solution.T
        R_oracle[index] = solution.R
        max_excitation[index] = solution.max_excitation

    report = DiscrepancyReport(
        detuning=probes,
        T_transfer=T_transfer,
        R_transfer=R_transfer,
        T_oracle=T_oracle,
        R_oracle=R_oracle,
        tolerance=tolerance,
        unavailable=unavailable,
        max_excitation=max_excitation,
    )

    logger.debug(
        "Compared transfer matrices with direct solve",
        subsystems=spec.size,
        points=grid.points,
        **report.summary(),
    )
    return report
