"""Deterministic CSV and JSON output.

CSV files are UTF-8 with LF line endings and floats written with 17
significant digits. Undefined values are written as ``nan`` in CSV and
``null`` in JSON. Nothing time-dependent is written, so repeated runs give
byte-identical files.
"""

import csv
import json
import math
from pathlib import Path
from typing import Any

import structlog

from .table import OutputTable

logger = structlog.get_logger(__name__)

METADATA_FILE = "metadata.json"


def format_value(value: Any) -> str:
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def sanitize(value: Any) -> Any:
    """Replace non-finite floats by None, recursively."""
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if isinstance(value, dict):
        return {str(k): sanitize(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [sanitize(v) for v in value]
    return value


def dumps(document: Any) -> str:
    text = json.dumps(sanitize(document), indent=2, sort_keys=True, allow_nan=False)
    return text + "\n"


def write_csv(path: Path, table: OutputTable) -> None:
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow(format_value(v) for v in row)


def write_outputs(
    directory: str | Path,
    name: str,
    tables: list[OutputTable],
    metadata: dict[str, Any],
    fmt: str = "csv",
) -> list[Path]:
    """Write tables and metadata into ``directory``.

    csv: one ``<table>.csv`` per table plus ``metadata.json``.
    json: a single ``<name>.json`` holding metadata and all tables.

    Raises:
        OSError: If the directory or a file cannot be written
    """
    target = Path(directory)
    target.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    if fmt == "json":
        path = target / f"{name}.json"
        document = {
            "metadata": metadata,
            "tables": {
                table.name: {"columns": list(table.columns), "rows": table.rows}
                for table in tables
            },
        }
        path.write_text(dumps(document), encoding="utf-8", newline="\n")
        written.append(path)
    else:
        for table in tables:
            path = target / f"{table.name}.csv"
            write_csv(path, table)
            written.append(path)
        path = target / METADATA_FILE
        path.write_text(dumps(metadata), encoding="utf-8", newline="\n")
        written.append(path)

    logger.info("Wrote outputs", directory=str(target), files=len(written), format=fmt)
    return written
