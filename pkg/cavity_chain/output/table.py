"""Tabular task output."""

from dataclasses import dataclass, field
from typing import Any


@dataclass
class OutputTable:
    """Rows destined for one output file."""

    name: str
    columns: tuple[str, ...]
    rows: list[tuple[Any, ...]] = field(default_factory=list)
