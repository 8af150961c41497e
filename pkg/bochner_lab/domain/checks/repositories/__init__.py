"""
Check repositories.
"""

from bochner_lab.domain.checks.repositories.check_repository import (
    DEFAULT_CHECKS,
    CheckRepository,
)

__all__ = ["DEFAULT_CHECKS", "CheckRepository"]
