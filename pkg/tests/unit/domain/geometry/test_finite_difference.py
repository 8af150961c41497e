"""
Unit tests for finite-difference stencils.
"""

import numpy as np
import pytest

from bochner_lab.core.exceptions import StencilOutOfDomain, ValidationError
from bochner_lab.domain.geometry.schemas.chart import ChartGrid
from bochner_lab.domain.geometry.services.finite_difference import FiniteDifference
from tests.factories import ChartGridFactory
from tests.utils.grid_helpers import refine


def _segment(resolution: int = 16, margin: float = 0.25) -> ChartGrid:
    return ChartGrid(
        dim=1, bounds=[(0.0, 1.0)], resolution=[resolution], periodic=[False], margin=[margin]
    )


class TestFiniteDifference:
    """Test suite for FiniteDifference."""

    @pytest.mark.parametrize("order", [2, 4])
    def test_periodic_derivative_converges_at_stencil_order(self, order):
        def error(chart):
            x = chart.mesh[..., 0]
            fd = FiniteDifference(chart, order)
            return float(np.abs(fd.diff(np.sin(x), 0) - np.cos(x)).max())

        rate = refine(ChartGridFactory(resolution=[16]), [16, 32], error)

        assert rate == pytest.approx(order, abs=0.2)

    @pytest.mark.parametrize("order, degree", [(2, 2), (4, 3)])
    def test_one_sided_closures_exact_on_polynomials(self, order, degree):
        chart = _segment()
        x = chart.mesh[..., 0]
        fd = FiniteDifference(chart, order)

        derivative = fd.diff(x**degree, 0)

        np.testing.assert_allclose(derivative, degree * x ** (degree - 1), atol=1e-10)

    def test_constants_are_in_the_kernel(self):
        chart = ChartGridFactory(resolution=[16, 16])
        fd = FiniteDifference(chart, 4)

        assert not fd.gradient(np.full(chart.shape, 3.7)).any()
        assert not fd.hessian(np.full(chart.shape, 3.7)).any()

    def test_hessian_is_symmetric(self):
        chart = ChartGridFactory(resolution=[16, 16])
        x, y = chart.mesh[..., 0], chart.mesh[..., 1]
        hess = FiniteDifference(chart, 2).hessian(np.sin(x) * np.cos(2 * y))

        np.testing.assert_array_equal(hess, np.swapaxes(hess, -1, -2))

    def test_wrapped_codomain_values(self):
        chart = ChartGridFactory(resolution=[16])
        x = chart.mesh[..., 0]
        period = 2.0 * np.pi
        wrapped = np.mod(2.0 * x, period)[..., None]

        derivative = FiniteDifference(chart, 2).diff(wrapped, 0, period=np.array([period]))

        np.testing.assert_allclose(derivative, 2.0, atol=1e-10)

    def test_unknown_order_rejected(self):
        with pytest.raises(ValidationError):
            FiniteDifference(ChartGridFactory(), 3)

    def test_stencil_must_fit_margin(self):
        with pytest.raises(StencilOutOfDomain):
            FiniteDifference(_segment(margin=0.0), 2)
