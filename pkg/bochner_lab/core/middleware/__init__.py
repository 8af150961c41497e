from bochner_lab.core.middleware.logging import (
    CheckLoggingMiddleware,
    setup_logging_middleware,
)


def setup_middleware(dispatcher):
    """
    Set up all middleware for the check dispatcher.

    Args:
        dispatcher: The CheckDispatcher instance
    """
    setup_logging_middleware(dispatcher)


__all__ = ["CheckLoggingMiddleware", "setup_logging_middleware", "setup_middleware"]
