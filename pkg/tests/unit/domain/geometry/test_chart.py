"""
Unit tests for chart grids.
"""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from bochner_lab.domain.geometry.schemas.chart import ChartGrid
from tests.factories import ChartGridFactory


class TestChartGrid:
    """Test suite for ChartGrid."""

    def test_box_is_closed(self):
        chart = ChartGrid.box([2.0 * math.pi, math.pi], 16)

        assert chart.is_closed
        assert chart.shape == (16, 16)
        assert chart.node_count == 256
        assert chart.spacing == pytest.approx((2.0 * math.pi / 16, math.pi / 16))

    def test_periodic_axis_excludes_upper_bound(self):
        chart = ChartGridFactory(resolution=[8])

        assert chart.axes[0][0] == 0.0
        assert chart.axes[0][-1] == pytest.approx(2.0 * math.pi * 7 / 8)

    def test_lat_long_layout(self):
        chart = ChartGrid.lat_long(3, 32, 0.01, 0.05)

        assert chart.periodic == [False, False, True]
        assert not chart.is_closed
        assert chart.bounds[0] == pytest.approx((0.01 * math.pi, 0.99 * math.pi))
        # ceil(0.05 * 31) nodes at each polar end
        assert chart.margin_nodes(0) == 2
        assert chart.margin_nodes(2) == 0

    def test_interior_mask_drops_margins(self):
        chart = ChartGridFactory(sphere=True, resolution=[32, 32])
        mask = chart.interior_mask

        assert not mask[:2].any()
        assert not mask[-2:].any()
        assert mask[2:-2].all()

    def test_quadrature_weights_integrate_area(self):
        box = ChartGrid.box([2.0, 3.0], 16)
        sphere = ChartGridFactory(sphere=True)

        assert box.quadrature_weights.sum() == pytest.approx(6.0)
        assert sphere.quadrature_weights.sum() == pytest.approx(0.98 * math.pi * 2.0 * math.pi)

    def test_mesh_shape_and_node_coordinates(self):
        chart = ChartGridFactory(resolution=[8, 12])

        assert chart.mesh.shape == (8, 12, 2)
        np.testing.assert_allclose(chart.node_coordinates([2, 3]), chart.mesh[2, 3])

    def test_with_resolution_keeps_domain(self):
        chart = ChartGridFactory(sphere=True)
        finer = chart.with_resolution(64)

        assert finer.bounds == chart.bounds
        assert finer.periodic == chart.periodic
        assert finer.shape == (64, 64)

    @pytest.mark.parametrize(
        "overrides",
        [
            {"resolution": [4, 16]},
            {"margin": [0.1, 0.0]},
            {"bounds": [(1.0, 0.0), (0.0, 1.0)]},
            {"dim": 3},
        ],
    )
    def test_invalid_axes_rejected(self, overrides):
        with pytest.raises(ValidationError):
            ChartGridFactory(**overrides)
