"""Runtime settings read from the environment."""

from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class SimulatorSettings(BaseSettings):
    """Global simulator configuration settings."""

    model_config = SettingsConfigDict(
        env_prefix="CAVITY_CHAIN_",
        case_sensitive=False,
        validate_assignment=True,
    )

    # Logging configuration
    log_level: str = Field(
        default="INFO", description="Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)"
    )
    log_format: Literal["json", "plain"] = Field(
        default="json", description="Log format (json, plain)"
    )

    # Metrics configuration
    metrics_enabled: bool = Field(
        default=False, description="Collect Prometheus metrics"
    )
    metrics_file: str | None = Field(
        default=None,
        description="Write metrics in text format to this path after a run",
    )

    # Numerical diagnostics
    condition_warning: float = Field(
        default=1e12,
        gt=1.0,
        description="Condition number above which direct solves are flagged",
    )
    oracle_tolerance: float = Field(
        default=1e-9,
        gt=0.0,
        le=1.0,
        description="Relative tolerance of transfer matrices against the direct solve",
    )

    # Enumeration limits
    pathway_cap: int = Field(
        default=100_000, ge=1, description="Maximum number of enumerated pathways"
    )
    signature_cap: int = Field(
        default=4,
        ge=1,
        le=8,
        description="Maximum chain size for atom on/off signature generation",
    )
