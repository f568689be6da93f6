"""Task handler registry and decorator."""

import time
from typing import Any

import structlog

from ..utils.metrics import TASK_DURATION
from .base import TaskContext, TaskHandler, TaskResult, TaskStatus

logger = structlog.get_logger(__name__)


class TaskRegistry:
    """Registry for task handlers with plugin architecture."""

    def __init__(self) -> None:
        """Initialize the task registry."""
        self._handlers: dict[str, TaskHandler] = {}

    def register(self, handler: TaskHandler) -> None:
        """Register a task handler.

        Args:
            handler: Task handler instance to register
        """
        if handler.name in self._handlers:
            logger.warning("Overriding existing task handler", task=handler.name)

        self._handlers[handler.name] = handler

        logger.debug(
            "Registered task handler",
            task=handler.name,
            description=handler.description,
        )

    def execute_task(self, task_name: str, context: TaskContext) -> TaskResult:
        """Execute a task with the specified context.

        Handler exceptions are captured into a failed result.

        Args:
            task_name: Name of the task to execute
            context: Task execution context

        Returns:
            Result of task execution
        """
        start_time = time.perf_counter()
        handler = self._handlers.get(task_name)

        if handler is None:
            return TaskResult(
                status=TaskStatus.FAILED,
                message=f"Task handler '{task_name}' not found",
                details={"available_tasks": sorted(self._handlers)},
                execution_time_seconds=time.perf_counter() - start_time,
            )

        try:
            if not handler.can_handle(context):
                result = TaskResult(
                    status=TaskStatus.SKIPPED,
                    message=f"Task '{task_name}' cannot run on this scenario",
                )
            else:
                logger.info(
                    "Executing task", task=task_name, scenario=context.scenario.name
                )
                result = handler.execute(context)

        except Exception as e:
            logger.error(
                "Task execution failed",
                task=task_name,
                error=str(e),
                error_type=type(e).__name__,
            )
            result = TaskResult(
                status=TaskStatus.FAILED,
                message=f"Task '{task_name}' failed: {e}",
                details={"error": str(e), "error_type": type(e).__name__},
            )

        result.execution_time_seconds = time.perf_counter() - start_time
        TASK_DURATION.labels(task=task_name, status=result.status.value).observe(
            result.execution_time_seconds
        )

        logger.info(
            "Task execution completed",
            task=task_name,
            status=result.status.value,
            execution_time=result.execution_time_seconds,
        )
        return result

    def list_tasks(self) -> list[dict[str, str]]:
        """List all registered tasks.

        Returns:
            List of task info dictionaries
        """
        return [
            {"name": name, "description": handler.description}
            for name, handler in sorted(self._handlers.items())
        ]


# Global task registry instance
_task_registry = TaskRegistry()


def register_task(task_name: str, description: str = "") -> Any:
    """Decorator to register task handlers.

    Args:
        task_name: Name of the task
        description: Optional description

    Returns:
        Decorator function
    """

    def decorator(cls: type[TaskHandler]) -> type[TaskHandler]:
        _task_registry.register(
            cls(task_name, description or f"Task handler for {task_name}")
        )
        return cls

    return decorator


def get_task_registry() -> TaskRegistry:
    """Get the global task registry instance.

    Returns:
        Global TaskRegistry instance
    """
    return _task_registry
