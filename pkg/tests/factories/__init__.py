"""
Test factories for creating test data.
"""

from tests.factories.check_factory import GeometrySpecFactory, RunConfigFactory
from tests.factories.geometry_factory import ChartGridFactory

__all__ = ["ChartGridFactory", "GeometrySpecFactory", "RunConfigFactory"]
