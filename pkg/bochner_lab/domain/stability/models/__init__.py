"""
Stability domain models.
"""

from bochner_lab.domain.stability.models.jacobi import JacobiOperator

__all__ = ["JacobiOperator"]
