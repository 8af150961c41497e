"""
Submanifolds schemas.
"""

from bochner_lab.domain.submanifolds.schemas.reports import (
    CliffordConstantsReport,
    ClassificationReport,
    CmcRigidityReport,
    CodazziReport,
    GaussConsistencyReport,
    PinchingReport,
    SimonsReport,
)

__all__ = [
    "ClassificationReport",
    "CliffordConstantsReport",
    "CmcRigidityReport",
    "CodazziReport",
    "GaussConsistencyReport",
    "PinchingReport",
    "SimonsReport",
]
