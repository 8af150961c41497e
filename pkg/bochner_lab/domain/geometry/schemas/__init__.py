"""
Geometry schemas.
"""

from bochner_lab.domain.geometry.schemas.chart import ChartGrid
from bochner_lab.domain.geometry.schemas.report import FieldReport

__all__ = ["ChartGrid", "FieldReport"]
