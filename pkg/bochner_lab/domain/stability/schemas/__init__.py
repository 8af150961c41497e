"""
Stability domain schemas.
"""

from bochner_lab.domain.stability.schemas.reports import (
    RigidityReport,
    StabilitySpectrumReport,
    SuperharmonicReport,
)

__all__ = ["RigidityReport", "StabilitySpectrumReport", "SuperharmonicReport"]
