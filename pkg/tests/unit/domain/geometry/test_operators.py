"""
Unit tests for differential operators and integration.
"""

import math

import numpy as np
import pytest

from bochner_lab.core.exceptions import InvalidExponent, ValidationError
from bochner_lab.domain.geometry.models.fields import TensorField
from bochner_lab.domain.geometry.services import operators as ops
from tests.utils.grid_helpers import interior_max


class TestLaplaceBeltrami:
    """Test suite for the Laplace-Beltrami operator."""

    @pytest.mark.parametrize("order, atol", [(2, 2e-2), (4, 1e-4)])
    def test_torus_eigenfunction(self, flat_metric, order, atol):
        mesh = flat_metric.chart.mesh
        f = np.sin(mesh[..., 0]) * np.cos(mesh[..., 1])

        lap = ops.laplace_beltrami(TensorField.scalar(flat_metric.chart, f), flat_metric, order=order)

        np.testing.assert_allclose(lap.data, -2.0 * f, atol=atol)

    def test_sphere_height_function(self, sphere_metric):
        chart = sphere_metric.chart
        z = np.cos(chart.mesh[..., 0])

        lap = ops.laplace_beltrami(TensorField.scalar(chart, z), sphere_metric, order=4)

        assert interior_max(lap.data + 2.0 * z, chart) < 1e-3

    def test_requires_scalar(self, flat_metric, wave_one_form):
        with pytest.raises(ValidationError):
            ops.laplace_beltrami(wave_one_form, flat_metric)


class TestConnection:
    """Test suite for Christoffel symbols and covariant derivatives."""

    def test_sphere_christoffel_closed_form(self, sphere_metric):
        theta = sphere_metric.chart.mesh[..., 0]
        gamma = ops.connection(sphere_metric)

        np.testing.assert_allclose(gamma[..., 0, 1, 1], -np.sin(theta) * np.cos(theta), atol=1e-14)
        np.testing.assert_allclose(gamma[..., 1, 0, 1], np.cos(theta) / np.sin(theta), rtol=1e-12)

    def test_metric_is_parallel_on_flat_torus(self, flat_metric):
        div = ops.divergence_sym2(flat_metric.as_tensor(), flat_metric)

        assert not div.data.any()

    def test_killing_field_has_vanishing_lie_derivative(self, flat_metric):
        xi = TensorField.vector(flat_metric.chart, np.ones(flat_metric.chart.shape + (2,)))

        lie = ops.lie_derivative_metric(xi, flat_metric)

        assert np.abs(lie.data).max() == 0.0

    def test_lower_then_raise(self, sphere_metric):
        chart = sphere_metric.chart
        xi = TensorField.vector(chart, np.stack([np.sin(chart.mesh[..., 1]), np.ones(chart.shape)], -1))

        back = ops.raise_index(ops.lower(xi, sphere_metric), sphere_metric)

        np.testing.assert_allclose(back.data, xi.data, atol=1e-12)


class TestIntegration:
    """Test suite for integrals and norms."""

    def test_sphere_chart_area(self, sphere_metric):
        area = ops.integrate(np.ones(sphere_metric.chart.shape), sphere_metric)

        assert area == pytest.approx(4.0 * math.pi * math.cos(0.01 * math.pi), rel=5e-3)

    def test_lp_norm_of_constant(self, flat_metric):
        one = TensorField.scalar(flat_metric.chart, np.ones(flat_metric.chart.shape))

        assert ops.lp_norm(one, flat_metric, 2.0) == pytest.approx(2.0 * math.pi)
        assert ops.lp_norm(one, flat_metric, 1.0) == pytest.approx(4.0 * math.pi**2)

    def test_lp_norm_rejects_small_exponent(self, flat_metric, wave_one_form):
        with pytest.raises(InvalidExponent):
            ops.lp_norm(wave_one_form, flat_metric, 0.5)

    def test_inner_product_of_one_forms(self, flat_metric, wave_one_form):
        # integral of sin^2 x + cos^2 y over the torus
        value = ops.inner_product(wave_one_form, wave_one_form, flat_metric)

        assert value == pytest.approx(4.0 * math.pi**2)

    def test_mixed_roles_rejected(self, flat_metric, wave_one_form):
        scalar = TensorField.scalar(flat_metric.chart, np.ones(flat_metric.chart.shape))

        with pytest.raises(ValidationError):
            ops.pointwise_inner(scalar, wave_one_form, flat_metric)

    def test_integrand_must_match_chart(self, flat_metric):
        with pytest.raises(ValidationError):
            ops.integrate(np.ones((4, 4)), flat_metric)

    def test_trace_of_metric_is_dimension(self, sphere_metric):
        trace = ops.trace_g(sphere_metric.as_tensor(), sphere_metric)

        np.testing.assert_allclose(trace, 2.0, atol=1e-13)
