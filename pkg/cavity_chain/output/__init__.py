"""Output tables and writers."""

from .table import OutputTable
from .writer import METADATA_FILE, write_outputs

__all__ = ["OutputTable", "METADATA_FILE", "write_outputs"]
