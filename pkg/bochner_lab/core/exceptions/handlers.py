import logging
from typing import Any, Dict, Tuple

from pydantic import ValidationError as PydanticValidationError

from bochner_lab.core.exceptions.base import BochnerLabError

logger = logging.getLogger(__name__)

ErrorResult = Tuple[Dict[str, Any], int]


def app_exception_handler(exc: BochnerLabError) -> ErrorResult:
    """
    Handler for application-specific exceptions.
    Returns the error payload and the exit code of the exception class.
    """
    payload: Dict[str, Any] = {"error": exc.detail, "code": exc.code}
    if exc.context:
        payload["details"] = exc.context
    return payload, exc.exit_code


def validation_exception_handler(exc: PydanticValidationError) -> ErrorResult:
    """
    Handler for Pydantic validation errors.
    Parameter records are pydantic models, so these are invalid parameters.
    """
    return (
        {
            "error": "Validation error",
            "code": "invalid_parameters",
            "details": exc.errors(include_url=False),
        },
        4,
    )


def unhandled_exception_handler(exc: Exception) -> ErrorResult:
    """
    Handler for unhandled exceptions.
    Returns a generic error payload.
    """
    logger.exception("Unhandled error: %s", exc)
    return {"error": "Internal error", "code": "internal_error"}, 1


def handle_exception(exc: Exception) -> ErrorResult:
    """Dispatch an exception to the most specific handler."""
    if isinstance(exc, BochnerLabError):
        return app_exception_handler(exc)
    if isinstance(exc, PydanticValidationError):
        return validation_exception_handler(exc)
    return unhandled_exception_handler(exc)


def register_exception_handlers(dispatcher) -> None:
    """
    Register the exception handler with a check dispatcher.
    """
    dispatcher.error_handler = handle_exception
