"""
Maps domain models.
"""

from bochner_lab.domain.maps.models.smooth_map import (
    ChartedManifold,
    PhiTensor,
    SmoothMap,
)

__all__ = ["ChartedManifold", "PhiTensor", "SmoothMap"]
