from bochner_lab.core.config import settings
from bochner_lab.core.exceptions import register_exception_handlers
from bochner_lab.core.middleware import setup_middleware

__all__ = [
    "settings",
    "register_exception_handlers",
    "setup_middleware",
]
