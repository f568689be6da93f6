"""Scenario documents: schema, parsing and validation.

A scenario is a single JSON object with the keys ``chain``, ``scan``,
``tasks``, ``oracle_check``, ``output`` and ``thresholds``, plus optional
``name``, ``variants``, ``length_scan``, ``pathways``, ``reflection`` and
``calibration``. Rates are in units of gamma, lengths in units of lambda.
"""

import json
import sys
from typing import Any, Literal

if sys.version_info >= (3, 11):
    from enum import StrEnum
else:  # pragma: no cover - Python 3.10 fallback mirroring enum.StrEnum
    from enum import Enum

    class StrEnum(str, Enum):
        def __str__(self) -> str:
            return str.__str__(self)

        def __format__(self, format_spec: str) -> str:
            return str.__format__(self, format_spec)

import structlog
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
    field_validator,
    model_validator,
)

from ..model.errors import ScenarioParseError, ScenarioValidationError
from ..model.types import (
    AtomParams,
    CavityParams,
    ChainSpec,
    DriveSide,
    ScanGrid,
    SubsystemParams,
    Thresholds,
    ValidationReport,
)
from ..model.validation import validate, validate_grid

logger = structlog.get_logger(__name__)


class TaskName(StrEnum):
    """Tasks a scenario can request."""

    SPECTRUM = "spectrum"
    SUPERNESS = "superness"
    LENGTH_SCAN = "length_scan"
    REFLECTION = "reflection"
    PATHWAYS = "pathways"


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class CavityConfig(_Section):
    """Configuration for one resonator."""

    delta0: float = Field(default=0.0, description="Cavity detuning offset")
    h: float = Field(default=0.0, description="Intermodal scattering rate")
    kappa_ex: float = Field(default=1.0, description="Fiber coupling rate")
    kappa_i: float = Field(default=0.0, description="Intrinsic loss rate")

    def to_params(self) -> CavityParams:
        return CavityParams(
            delta0=self.delta0, h=self.h, kappa_ex=self.kappa_ex, kappa_i=self.kappa_i
        )

    @classmethod
    def from_params(cls, params: CavityParams) -> "CavityConfig":
        return cls(
            delta0=params.delta0,
            h=params.h,
            kappa_ex=params.kappa_ex,
            kappa_i=params.kappa_i,
        )


class AtomConfig(_Section):
    """Configuration for the atom of one subsystem."""

    delta0: float = Field(
        default=0.0, alias="Delta0", description="Atom detuning offset"
    )
    gamma: float = Field(default=1.0, description="Spontaneous decay rate")
    g_a: float = Field(
        default=0.0, alias="g_A", description="Coupling to normal mode A"
    )
    g_b: float = Field(
        default=0.0, alias="g_B", description="Coupling to normal mode B"
    )

    def to_params(self) -> AtomParams:
        return AtomParams(
            delta0=self.delta0, gamma=self.gamma, g_a=self.g_a, g_b=self.g_b
        )

    @classmethod
    def from_params(cls, params: AtomParams) -> "AtomConfig":
        return cls(
            delta0=params.delta0, gamma=params.gamma, g_a=params.g_a, g_b=params.g_b
        )


class SubsystemConfig(_Section):
    cavity: CavityConfig = Field(description="Resonator parameters")
    atom: AtomConfig | None = Field(
        default=None, description="Atom; absent for empty cavity"
    )

    def to_params(self) -> SubsystemParams:
        return SubsystemParams(
            cavity=self.cavity.to_params(),
            atom=self.atom.to_params() if self.atom is not None else None,
        )

    @classmethod
    def from_params(cls, params: SubsystemParams) -> "SubsystemConfig":
        return cls(
            cavity=CavityConfig.from_params(params.cavity),
            atom=(
                AtomConfig.from_params(params.atom) if params.atom is not None else None
            ),
        )


class ChainConfig(_Section):
    """Ordered subsystems and the fiber segments between them."""

    subsystems: list[SubsystemConfig] = Field(
        description="Subsystems from left to right"
    )
    lengths: list[float] = Field(
        default_factory=list, description="Segment lengths in units of lambda"
    )
    drive: DriveSide = Field(
        default=DriveSide.LEFT, description="Driven end of the chain"
    )

    def to_spec(self) -> ChainSpec:
        return ChainSpec(
            subsystems=tuple(sub.to_params() for sub in self.subsystems),
            lengths=tuple(self.lengths),
            drive=self.drive,
        )

    @classmethod
    def from_spec(cls, spec: ChainSpec) -> "ChainConfig":
        return cls(
            subsystems=[SubsystemConfig.from_params(sub) for sub in spec.subsystems],
            lengths=list(spec.lengths),
            drive=spec.drive,
        )


class ScanConfig(_Section):
    start: float = Field(default=-150.0, description="First probe detuning")
    stop: float = Field(default=150.0, description="Last probe detuning")
    points: int = Field(default=3001, description="Number of grid points")

    def to_grid(self) -> ScanGrid:
        return ScanGrid(start=self.start, stop=self.stop, points=self.points)


class OracleCheckConfig(_Section):
    enabled: bool = Field(
        default=False, description="Cross-check every point by direct solve"
    )
    tolerance: float = Field(default=1e-9, gt=0.0, description="Relative tolerance")


class OutputConfig(_Section):
    format: Literal["csv", "json"] = Field(default="csv", description="Output format")
    path: str = Field(default="output", description="Output directory")


class ThresholdConfig(_Section):
    saturation: float = Field(default=0.1, gt=0.0, description="Excitation flag limit")
    epsilon_T: float = Field(
        default=1e-9, ge=0.0, description="T below which delta_T / T is undefined"
    )
    epsilon_t: float = Field(
        default=1e-12, ge=0.0, description="|t| at or below which a subsystem is opaque"
    )
    drive_amplitude: float = Field(
        default=1.0,
        gt=0.0,
        description="Input flux amplitude at which excitations are flagged",
    )

    def to_thresholds(self) -> Thresholds:
        return Thresholds(
            saturation=self.saturation,
            epsilon_T=self.epsilon_T,
            epsilon_t=self.epsilon_t,
            drive_amplitude=self.drive_amplitude,
        )


class VariantConfig(_Section):
    """Labelled override of the chain's segment lengths."""

    label: str = Field(min_length=1, description="Series label used in file names")
    lengths: list[float] = Field(description="Replacement segment lengths")


class LengthScanConfig(_Section):
    """Uniform chains built from the first subsystem of ``chain``."""

    length: float = Field(default=100.2, gt=0.0, description="Segment length")
    n_min: int = Field(default=2, ge=2, description="Smallest chain")
    n_max: int = Field(default=20, ge=2, description="Largest chain")

    @model_validator(mode="after")
    def _ordered(self) -> "LengthScanConfig":
        if self.n_max < self.n_min:
            raise ValueError("n_max must be >= n_min")
        return self

    @property
    def n_range(self) -> list[int]:
        return list(range(self.n_min, self.n_max + 1))


class PathwayConfig(_Section):
    probe: float | None = Field(
        default=None, description="Probe detuning; the superness peak when omitted"
    )
    max_bounces: int = Field(default=20, ge=0, description="Even reflection budget")

    @field_validator("max_bounces")
    @classmethod
    def _even(cls, value: int) -> int:
        if value % 2:
            raise ValueError("max_bounces must be even")
        return value


class ReflectionConfig(_Section):
    landmarks: list[float] = Field(
        default_factory=list, description="Detunings at which R is summarised"
    )
    ambiguity_margin: float = Field(
        default=0.01,
        ge=0.0,
        description="Classification margins below this are ambiguous",
    )


class ScenarioConfig(_Section):
    """A complete simulation request."""

    name: str = Field(default="scenario", min_length=1, description="Scenario name")
    chain: ChainConfig
    scan: ScanConfig = Field(default_factory=ScanConfig)
    tasks: list[TaskName] = Field(min_length=1, description="Tasks to run, in order")
    oracle_check: OracleCheckConfig = Field(default_factory=OracleCheckConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)
    thresholds: ThresholdConfig = Field(default_factory=ThresholdConfig)
    variants: list[VariantConfig] = Field(default_factory=list)
    length_scan: LengthScanConfig = Field(default_factory=LengthScanConfig)
    pathways: PathwayConfig = Field(default_factory=PathwayConfig)
    reflection: ReflectionConfig = Field(default_factory=ReflectionConfig)
    calibration: dict[str, Any] = Field(
        default_factory=dict, description="Notes on calibrated, unpublished parameters"
    )

    @field_validator("oracle_check", mode="before")
    @classmethod
    def _flag_shorthand(cls, value: Any) -> Any:
        if isinstance(value, bool):
            return {"enabled": value}
        return value

    @field_validator("tasks")
    @classmethod
    def _unique_tasks(cls, value: list[TaskName]) -> list[TaskName]:
        if len(set(value)) != len(value):
            raise ValueError("tasks must not repeat")
        return value

    @field_validator("variants")
    @classmethod
    def _unique_labels(cls, value: list[VariantConfig]) -> list[VariantConfig]:
        labels = [variant.label for variant in value]
        if len(set(labels)) != len(labels):
            raise ValueError("variant labels must be unique")
        return value

    def chain_spec(self) -> ChainSpec:
        return self.chain.to_spec()

    def grid(self) -> ScanGrid:
        return self.scan.to_grid()

    def limits(self) -> Thresholds:
        return self.thresholds.to_thresholds()

    def series(self) -> list[tuple[str | None, ChainSpec]]:
        """The base chain, or one chain per length variant."""
        spec = self.chain_spec()
        if not self.variants:
            return [(None, spec)]
        return [
            (variant.label, spec.with_lengths(variant.lengths))
            for variant in self.variants
        ]

    def metadata(self) -> dict[str, Any]:
        """Every setting of the scenario, defaults included."""
        return self.model_dump(mode="json", by_alias=True)


Scenario = ScenarioConfig


def _field_path(loc: tuple[int | str, ...]) -> str:
    path = ""
    for part in loc:
        if isinstance(part, int):
            path += f"[{part}]"
        else:
            path += f".{part}" if path else str(part)
    return path


def validate_scenario(scenario: ScenarioConfig) -> ValidationReport:
    """Check the model invariants of every chain and grid in a scenario."""
    report = validate(scenario.chain_spec())
    report.violations.extend(validate_grid(scenario.grid()).violations)

    spec = scenario.chain_spec()
    for index, variant in enumerate(scenario.variants):
        prefix = f"variants[{index}]"
        variant_report = validate(spec.with_lengths(variant.lengths), prefix=prefix)
        report.violations.extend(
            v
            for v in variant_report.violations
            if v.path.startswith(f"{prefix}.lengths")
        )

    return report


def parse_scenario(text: str) -> ScenarioConfig:
    """Parse and fully validate a scenario document.

    Args:
        text: JSON scenario document

    Returns:
        Validated scenario with defaults applied

    Raises:
        ScenarioParseError: Malformed JSON, unknown keys or tasks, wrong types
        ScenarioValidationError: Model invariants violated
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioParseError(e.msg, line=e.lineno) from e

    try:
        scenario = ScenarioConfig.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        raise ScenarioParseError(
            first["msg"], field_path=_field_path(first["loc"])
        ) from e

    report = validate_scenario(scenario)
    if not report.ok:
        raise ScenarioValidationError(report.violations)

    logger.debug(
        "Parsed scenario",
        scenario=scenario.name,
        subsystems=len(scenario.chain.subsystems),
        tasks=[task.value for task in scenario.tasks],
    )
    return scenario


def scenario_document(scenario: ScenarioConfig) -> str:
    """Serialize a scenario back to its JSON form."""
    return json.dumps(scenario.metadata(), indent=2, sort_keys=True)
