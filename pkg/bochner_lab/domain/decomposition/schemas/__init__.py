"""
Decomposition schemas.
"""

from bochner_lab.domain.decomposition.schemas.reports import (
    SCALING_NOTE,
    DecompositionReport,
    IntegralFormulaReport,
)
from bochner_lab.domain.decomposition.schemas.solver import SolverConfig, SolverStats

__all__ = [
    "SCALING_NOTE",
    "DecompositionReport",
    "IntegralFormulaReport",
    "SolverConfig",
    "SolverStats",
]
