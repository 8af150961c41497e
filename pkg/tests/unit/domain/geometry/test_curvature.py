"""
Unit tests for curvature tensors and curvature extremes.
"""

import math

import numpy as np
import pytest

from bochner_lab.core.exceptions import DegeneratePlane, ValidationError
from bochner_lab.domain.geometry.models.connection import levi_civita_from_jet, space_form_riemann
from bochner_lab.domain.geometry.models.fields import MetricField
from bochner_lab.domain.geometry.models.metric_models import (
    HypersphericalMetric,
    JoinSphereMetric,
    ProductMetric,
)
from bochner_lab.domain.geometry.services.curvature import (
    build_levi_civita,
    curvature_extremes,
    curvature_extremes_field,
    model_extremes,
    sectional_curvature,
)
from tests.utils.grid_helpers import interior_max


class TestLeviCivita:
    """Test suite for build_levi_civita."""

    def test_analytic_round_sphere(self, sphere_metric):
        curv = build_levi_civita(sphere_metric, "analytic")

        assert curv.certified
        np.testing.assert_allclose(curv.scalar, 2.0, atol=1e-10)
        np.testing.assert_allclose(curv.ricci, sphere_metric.components, atol=1e-10)

    def test_finite_difference_flat_is_exact(self, flat_metric):
        curv = build_levi_civita(flat_metric, "finite_difference", order=2)

        assert not curv.certified
        assert not curv.riemann.any()

    def test_finite_difference_converges_on_sphere(self, sphere_metric):
        errors = []
        for n in (16, 32):
            metric = MetricField.from_model(
                sphere_metric.chart.with_resolution(n), HypersphericalMetric(2)
            )
            curv = build_levi_civita(metric, "finite_difference", order=2)
            errors.append(interior_max(curv.scalar - 2.0, metric.chart))

        assert errors[1] < errors[0] / 2.5

    def test_analytic_mode_needs_evaluator(self, sphere_metric):
        bare = MetricField.from_components(sphere_metric.chart, sphere_metric.components)

        with pytest.raises(ValidationError):
            build_levi_civita(bare, "analytic")

    def test_unknown_mode(self, sphere_metric):
        with pytest.raises(ValidationError):
            build_levi_civita(sphere_metric, "symbolic")


class TestSectionalCurvature:
    """Test suite for sectional curvature and extremes."""

    def test_sphere_plane(self, sphere_metric):
        curv = build_levi_civita(sphere_metric, "analytic")

        value = sectional_curvature(curv, sphere_metric, (16, 3), ([1.0, 0.0], [0.3, 2.0]))

        assert value == pytest.approx(1.0)

    def test_degenerate_plane(self, sphere_metric):
        curv = build_levi_civita(sphere_metric, "analytic")

        with pytest.raises(DegeneratePlane):
            sectional_curvature(curv, sphere_metric, (16, 3), ([1.0, 2.0], [2.0, 4.0]))

    def test_extremes_at_node(self, sphere_metric):
        curv = build_levi_civita(sphere_metric, "analytic")

        ric = curvature_extremes(curv, sphere_metric, (10, 10), "ric_min")
        sec = curvature_extremes(curv, sphere_metric, (10, 10), "sec_min")

        assert ric.value == pytest.approx(1.0)
        assert ric.certified
        assert sec.value == 1.0

    def test_extremes_reject_bad_node_and_kind(self, sphere_metric):
        curv = build_levi_civita(sphere_metric, "analytic")

        with pytest.raises(ValidationError):
            curvature_extremes(curv, sphere_metric, (99, 0), "ric_min")
        with pytest.raises(ValidationError):
            curvature_extremes_field(curv, sphere_metric, "scalar")

    def test_product_of_spheres(self):
        model = ProductMetric([HypersphericalMetric(2, 1.0), HypersphericalMetric(2, 2.0)])
        points = np.array([[math.pi / 2, 0.3, math.pi / 2, 1.0], [1.0, 2.0, 2.0, 4.0]])

        ric_min, ric_max, sec_min, certified = model_extremes(model, points, seed=0)

        assert not certified
        np.testing.assert_allclose(ric_min, 0.25, atol=1e-10)
        np.testing.assert_allclose(ric_max, 1.0, atol=1e-10)
        np.testing.assert_allclose(sec_min, 0.0, atol=1e-10)

    def test_join_sphere_is_certified(self):
        model = JoinSphereMetric(1, 1)
        points = np.array([[0.3, 0.0, 1.0], [0.7, 2.0, 4.0], [1.2, 5.0, 0.5], [0.9, 1.0, 1.0]])

        ric_min, ric_max, sec_min, certified = model_extremes(model, points)

        assert certified
        np.testing.assert_allclose(ric_min, 2.0)
        np.testing.assert_allclose(sec_min, 1.0)


class TestJoinSphereMetric:
    """The join coordinates must describe the unit sphere."""

    POINTS = np.array([[0.4, 1.0, 1.2, 0.3], [1.1, 5.5, 2.0, 4.0], [0.8, 3.0, 0.6, 2.5]])

    def test_jet_gives_unit_curvature(self):
        model = JoinSphereMetric(1, 2)
        g, dg, ddg = model.jet(self.POINTS)

        riemann = levi_civita_from_jet(g, np.linalg.inv(g), dg, ddg)[1]

        np.testing.assert_allclose(riemann, space_form_riemann(g, 1.0), atol=1e-10)

    def test_derivatives_match_differences(self):
        model = JoinSphereMetric(2, 1)
        h = 1e-5
        for p in range(model.dim):
            step = np.zeros(model.dim)
            step[p] = h
            central = (model.metric(self.POINTS + step) - model.metric(self.POINTS - step)) / (2 * h)
            np.testing.assert_allclose(model.metric_derivatives(self.POINTS)[:, p], central, atol=1e-8)
            central = (
                model.metric_derivatives(self.POINTS + step) - model.metric_derivatives(self.POINTS - step)
            ) / (2 * h)
            np.testing.assert_allclose(model.metric_second_derivatives(self.POINTS)[:, p], central, atol=1e-7)
