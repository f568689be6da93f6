"""Built-in task handlers."""

# Import all built-in tasks to register them
from . import length_scan, pathways, reflection, spectrum, superness

__all__: list[str] = []
