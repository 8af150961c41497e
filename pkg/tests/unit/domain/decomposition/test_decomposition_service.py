"""
Unit tests for the L2-orthogonal decomposition and the integral formula.
"""

import numpy as np
import pytest

from bochner_lab.core.exceptions import AmbientNotSpaceForm, NotClosedManifold, ValidationError
from bochner_lab.domain.decomposition.schemas.solver import SolverConfig
from bochner_lab.domain.decomposition.services.ahlfors import delta_star
from bochner_lab.domain.decomposition.services.decomposition_service import (
    INTEGRAL_SCALE,
    check_3_8_and_3_9,
    decomposition_report,
    solve_decomposition,
)
from bochner_lab.domain.geometry.models.fields import FieldRole, MetricField, TensorField
from bochner_lab.domain.geometry.models.metric_models import FlatMetric, HypersphericalMetric, ProductMetric
from bochner_lab.domain.geometry.services.operators import trace_g
from bochner_lab.domain.submanifolds.models.immersion import AmbientSpace, Immersion
from tests.factories import ChartGridFactory

SOLVER = SolverConfig(rtol=1e-10, max_iterations=2000)


@pytest.fixture
def small_torus():
    chart = ChartGridFactory()
    return chart, MetricField.from_model(chart, FlatMetric(2))


def constant_tt(chart):
    """dx dx - dy dy, a TT-tensor of the flat torus."""
    data = np.zeros(chart.shape + (2, 2))
    data[..., 0, 0] = 1.0
    data[..., 1, 1] = -1.0
    return TensorField.sym2(chart, data)


class TestSolveDecomposition:
    """Test suite for solve_decomposition and decomposition_report."""

    def test_pure_gauge_tensor(self, small_torus):
        chart, metric = small_torus
        mesh = chart.mesh
        theta = TensorField.one_form(chart, np.stack([np.sin(mesh[..., 1]), np.cos(mesh[..., 0])], axis=-1))
        phi = delta_star(theta, metric)

        result = solve_decomposition(phi, metric, SOLVER)

        assert result.solver_stats.converged
        assert result.solver_stats.kernel_projection_applied
        assert np.abs(result.tt_part.data).max() < 1e-6

    def test_mixed_tensor_report(self, small_torus):
        chart, metric = small_torus
        mesh = chart.mesh
        theta = TensorField.one_form(chart, np.stack([np.sin(mesh[..., 0]), np.zeros(chart.shape)], axis=-1))
        scale = TensorField.sym2(chart, (1.0 + 0.5 * np.cos(mesh[..., 0]))[..., None, None] * metric.components)
        phi = delta_star(theta, metric) + scale + constant_tt(chart)

        result = solve_decomposition(phi, metric, SOLVER)
        report = decomposition_report(phi, result, metric)

        assert report.passes
        assert report.reconstruction_l2 < 1e-6
        assert report.trace_max < 1e-8
        assert np.abs(trace_g(result.tt_part, metric)).max() < 1e-8
        assert report.tt_l2 > 0.1
        assert report.notes

    def test_requires_sym2(self, small_torus, wave_one_form):
        _, metric = small_torus

        with pytest.raises(ValidationError):
            solve_decomposition(wave_one_form, metric)

    def test_sphere_chart_is_not_closed(self, sphere_metric, sphere_chart):
        phi = TensorField.zeros(sphere_chart, FieldRole.SYM2)

        with pytest.raises(NotClosedManifold):
            solve_decomposition(phi, sphere_metric, SOLVER)


class TestIntegralFormula:
    """Test suite for the divergence identity and integral formula of hypersurfaces."""

    def test_flat_slice_takes_rigid_branch(self, build_entry):
        imm = build_entry("flat_subtorus", z0=0.5).instance

        report = check_3_8_and_3_9(imm, solver_cfg=SOLVER)

        assert report.scale_factor == INTEGRAL_SCALE
        assert report.divergence_holds
        assert report.formula_holds
        assert report.lie_integral_vanishes
        assert report.ahlfors_vanishes
        assert report.branch_consistent

    def test_graph_hypersurface(self, build_entry):
        imm = build_entry("graph_hypersurface", resolution=32, epsilon=0.1).instance

        report = check_3_8_and_3_9(imm, solver_cfg=SOLVER)

        assert report.divergence_holds
        assert report.formula_holds
        assert not report.mean_curvature_constant
        assert report.branch_consistent

    def test_needs_space_form_ambient(self):
        chart = ChartGridFactory()
        model = ProductMetric([FlatMetric(1), HypersphericalMetric(2)])
        mesh = chart.mesh
        components = np.stack([mesh[..., 0], np.full(chart.shape, 1.0), mesh[..., 1]], axis=-1)
        imm = Immersion(chart, AmbientSpace("R x S^2", model), components)

        with pytest.raises(AmbientNotSpaceForm):
            check_3_8_and_3_9(imm)
