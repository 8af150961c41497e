"""
Geometry domain models.
"""

from bochner_lab.domain.geometry.models.fields import (
    CurvatureBundle,
    CurvatureExtreme,
    FieldRole,
    MetricField,
    TensorField,
)
from bochner_lab.domain.geometry.models.metric_models import (
    FlatMetric,
    HypersphericalMetric,
    JoinSphereMetric,
    MetricModel,
    ProductMetric,
)

__all__ = [
    "CurvatureBundle",
    "CurvatureExtreme",
    "FieldRole",
    "FlatMetric",
    "HypersphericalMetric",
    "JoinSphereMetric",
    "MetricField",
    "MetricModel",
    "ProductMetric",
    "TensorField",
]
