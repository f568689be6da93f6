"""Task execution subsystem with plugin architecture."""

from .base import OutputTable, TaskContext, TaskHandler, TaskResult, TaskStatus
from .registry import TaskRegistry, get_task_registry, register_task
from .runner import ExitStatus, run

__all__ = [
    "TaskHandler",
    "TaskContext",
    "TaskResult",
    "TaskStatus",
    "OutputTable",
    "TaskRegistry",
    "register_task",
    "get_task_registry",
    "ExitStatus",
    "run",
]
