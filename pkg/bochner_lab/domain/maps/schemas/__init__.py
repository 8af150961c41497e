"""
Maps schemas.
"""

from bochner_lab.domain.maps.schemas.reports import (
    EellsSampsonReport,
    EnergyReport,
    HarmonicityReport,
    HypothesisReport,
    HypothesisVariant,
    IntegralQReport,
    QBoundReport,
    QEigenframeReport,
    WeitzenboeckReport,
)

__all__ = [
    "EellsSampsonReport",
    "EnergyReport",
    "HarmonicityReport",
    "HypothesisReport",
    "HypothesisVariant",
    "IntegralQReport",
    "QBoundReport",
    "QEigenframeReport",
    "WeitzenboeckReport",
]
