import logging
import time
from typing import Any, Callable

from bochner_lab.core.config import settings

# Configure logger
logger = logging.getLogger("bochner_lab.middleware")

CheckRunner = Callable[..., Any]


class CheckLoggingMiddleware:
    """
    Middleware for logging check execution.
    Logs the check id, geometry, verdict, and processing time for each check.
    """

    def __init__(self, runner: CheckRunner):
        self.runner = runner

    def __call__(self, check_id: str, geometry: Any, *args, **kwargs):
        start_time = time.perf_counter()

        # Run the check
        report = self.runner(check_id, geometry, *args, **kwargs)

        # Calculate processing time
        process_time = time.perf_counter() - start_time

        label = geometry.label() if hasattr(geometry, "label") else geometry
        verdict = getattr(report, "verdict", "error")
        logger.info(f"{check_id} {label} {verdict} Completed in {process_time:.4f}s")

        return report


def setup_logging_middleware(dispatcher) -> None:
    """
    Set up check logging middleware for a check dispatcher.

    Args:
        dispatcher: The CheckDispatcher instance
    """
    if settings.ENV != "testing":  # Skip in testing environment
        dispatcher.add_middleware(CheckLoggingMiddleware)
