"""
Decomposition domain models.
"""

from bochner_lab.domain.decomposition.models.decomposition import DecompositionResult

__all__ = ["DecompositionResult"]
