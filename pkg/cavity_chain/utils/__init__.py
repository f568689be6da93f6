"""Utility modules for the simulator."""

from .logging import setup_logging
from .metrics import write_metrics

__all__ = ["setup_logging", "write_metrics"]
