"""Prometheus metrics for simulation runs.

Metrics live on a dedicated registry and are written in the text exposition
format after a run; there is no metrics server.
"""

from prometheus_client import CollectorRegistry, Counter, Histogram, write_to_textfile

registry = CollectorRegistry()

POINTS_EVALUATED = Counter(
    "cavity_chain_points_evaluated_total",
    "Probe detunings evaluated",
    ["task"],
    registry=registry,
)
ORACLE_COMPARISONS = Counter(
    "cavity_chain_oracle_comparisons_total",
    "Points cross-checked against the direct solver",
    registry=registry,
)
ORACLE_MISMATCHES = Counter(
    "cavity_chain_oracle_mismatches_total",
    "Cross-checked points outside tolerance",
    registry=registry,
)
OPAQUE_FALLBACKS = Counter(
    "cavity_chain_opaque_fallbacks_total",
    "Points solved directly because a subsystem was opaque",
    registry=registry,
)
TASK_DURATION = Histogram(
    "cavity_chain_task_duration_seconds",
    "Wall time per task",
    ["task", "status"],
    registry=registry,
)


def write_metrics(path: str) -> None:
    """Write every metric of the run registry to ``path``."""
    write_to_textfile(path, registry)
