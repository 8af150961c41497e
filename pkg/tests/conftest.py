import os

# Must be set before bochner_lab reads its settings
os.environ.setdefault("BOCHNER_LAB_ENV", "testing")

from typing import Callable

import numpy as np
import pytest

from bochner_lab.core.config import activate_settings, get_settings
from bochner_lab.domain.catalog.models.entry import CatalogEntry
from bochner_lab.domain.catalog.services.catalog_service import CatalogService
from bochner_lab.domain.checks.services.check_service import CheckDispatcher, create_dispatcher
from bochner_lab.domain.geometry.models.fields import MetricField, TensorField
from bochner_lab.domain.geometry.models.metric_models import FlatMetric, HypersphericalMetric
from bochner_lab.domain.geometry.schemas.chart import ChartGrid
from tests.factories.geometry_factory import ChartGridFactory


@pytest.fixture(scope="session")
def test_settings():
    """Settings the suite runs with."""
    settings = get_settings()
    assert settings.ENV == "testing"
    return settings


@pytest.fixture(autouse=True)
def restore_settings():
    """Undo any activate_settings() a test performs."""
    yield
    activate_settings(None)


@pytest.fixture
def torus_chart() -> ChartGrid:
    """Periodic 2D chart of side 2*pi at 32 nodes per axis."""
    return ChartGridFactory(resolution=[32, 32])


@pytest.fixture
def flat_metric(torus_chart: ChartGrid) -> MetricField:
    return MetricField.from_model(torus_chart, FlatMetric(2))


@pytest.fixture
def sphere_chart(test_settings) -> ChartGrid:
    return ChartGrid.lat_long(2, 32, test_settings.POLE_CUT, test_settings.POLAR_MARGIN)


@pytest.fixture
def sphere_metric(sphere_chart: ChartGrid) -> MetricField:
    return MetricField.from_model(sphere_chart, HypersphericalMetric(2))


@pytest.fixture(scope="session")
def catalog() -> CatalogService:
    return CatalogService()


@pytest.fixture(scope="session")
def build_entry(catalog: CatalogService) -> Callable[..., CatalogEntry]:
    """Build a catalog entry by name with keyword parameters."""

    def build(name: str, resolution: int = 16, order: int = 2, **params) -> CatalogEntry:
        return catalog.build(name, params, resolution, order)

    return build


@pytest.fixture
def dispatcher() -> CheckDispatcher:
    """A dispatcher with error handling and middleware installed."""
    return create_dispatcher()


@pytest.fixture
def wave_one_form(torus_chart: ChartGrid) -> TensorField:
    """sin(x) dx + cos(y) dy on the 2D torus chart."""
    mesh = torus_chart.mesh
    return TensorField.one_form(
        torus_chart, np.stack([np.sin(mesh[..., 0]), np.cos(mesh[..., 1])], axis=-1)
    )
