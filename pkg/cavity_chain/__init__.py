"""Atom-microcavity chain simulator."""

__version__ = "0.1.0"
__author__ = "Cavity Chain Team"
__description__ = (
    "Steady-state transport and supermode analysis"
    " for fiber-coupled atom-cavity chains"
)
