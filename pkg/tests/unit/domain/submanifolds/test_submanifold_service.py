"""
Unit tests for second fundamental forms and the submanifold identities.
"""

import math
from dataclasses import replace

import numpy as np
import pytest

from bochner_lab.core.exceptions import HypersurfaceOnly, InvalidParameters, ValidationError
from bochner_lab.domain.geometry.models.metric_models import FlatMetric
from bochner_lab.domain.submanifolds.models.immersion import AmbientSpace, Immersion
from bochner_lab.domain.submanifolds.services import submanifold_service as sub
from tests.factories import ChartGridFactory
from tests.utils.grid_helpers import interior_max


@pytest.fixture(scope="module")
def clifford(build_entry):
    imm = build_entry("clifford_torus", resolution=16).instance
    return imm, sub.second_fundamental_form(imm)


@pytest.fixture(scope="module")
def equator(build_entry):
    imm = build_entry("equator", resolution=16).instance
    return imm, sub.second_fundamental_form(imm)


@pytest.fixture(scope="module")
def sphere_in_flat(build_entry):
    imm = build_entry("round_sphere_in_flat", resolution=32, order=4, r=2.0).instance
    return imm, sub.second_fundamental_form(imm)


class TestSecondFundamentalForm:
    """Test suite for second_fundamental_form and the normal frame."""

    def test_clifford_norm(self, clifford):
        imm, data = clifford

        assert interior_max(data.phi_norm_sq - 2.0, imm.chart) < 1e-8
        assert interior_max(data.scalar_mean_curvature, imm.chart) < 1e-8

    def test_equator_is_totally_geodesic(self, equator):
        imm, data = equator

        assert interior_max(data.phi_norm_sq, imm.chart) < 1e-10

    def test_inward_sphere_mean_curvature(self, sphere_in_flat):
        imm, data = sphere_in_flat

        assert interior_max(data.mean_curvature[..., 0] - 0.5, imm.chart) < 1e-3

    def test_normal_frame_is_orthonormal(self, equator):
        imm, data = equator

        assert sub.normal_frame_defect(imm, data.frame) < 1e-10

    def test_shape_operator_is_self_adjoint(self, sphere_in_flat):
        _, data = sphere_in_flat

        assert sub.shape_operator_defect(data) < 1e-10

    def test_clifford_principal_curvatures(self, clifford):
        imm, data = clifford
        principal = sub.principal_curvatures(data)[imm.chart.interior_mask]

        report = sub.clifford_constants_check(1, 1, principal, tol=1e-4)

        assert report.numeric_match

    def test_unequal_clifford_torus(self, build_entry):
        imm = build_entry("clifford_torus", resolution=12, n1=1, n2=2).instance
        data = sub.second_fundamental_form(imm)
        principal = sub.principal_curvatures(data)[imm.chart.interior_mask]

        assert interior_max(data.phi_norm_sq - 3.0, imm.chart) < 1e-4
        assert sub.clifford_constants_check(1, 2, principal).numeric_match

    def test_codimension_two(self, build_entry):
        imm = build_entry("clifford_torus", resolution=16, codimension=2).instance

        data = sub.second_fundamental_form(imm)

        assert data.codimension == 2
        assert data.shape_operator is None
        assert interior_max(data.phi_norm_sq - 2.0, imm.chart) < 1e-8
        with pytest.raises(HypersurfaceOnly):
            sub.principal_curvatures(data)

    def test_components_validated(self):
        chart = ChartGridFactory(resolution=[8, 8])
        ambient = AmbientSpace("R^3", FlatMetric(3))

        with pytest.raises(ValidationError):
            Immersion(chart, ambient, np.zeros((8, 8, 2)))
        with pytest.raises(ValidationError):
            Immersion(chart, AmbientSpace("R^2", FlatMetric(2)), np.zeros((8, 8, 2)))


class TestIdentities:
    """Test suite for the Simons, Codazzi and Gauss identities."""

    def test_simons_on_clifford_torus(self, clifford):
        imm, data = clifford

        report = sub.simons_residual(data, imm)

        assert report.minimal
        assert not report.informational
        assert report.passes

    def test_simons_on_equator(self, equator):
        imm, data = equator

        report = sub.simons_residual(data, imm)

        assert report.passes
        assert report.max_abs < 1e-8

    def test_simons_informational_for_round_sphere(self, sphere_in_flat, caplog):
        imm, data = sphere_in_flat

        report = sub.simons_residual(data, imm)

        assert not report.minimal
        assert report.informational
        assert "not minimal" in caplog.text

    def test_codazzi_on_round_sphere(self, sphere_in_flat):
        imm, data = sphere_in_flat

        report = sub.codazzi_residual(data, imm)

        assert report.passes
        assert report.divergence_max is not None

    def test_gauss_consistency(self, sphere_in_flat):
        imm, data = sphere_in_flat

        report = sub.gauss_consistency_check(imm, data)
        curvature = sub.gauss_curvature(imm, data)

        assert report.passes
        assert interior_max(curvature.scalar - 0.5, imm.chart) < 1e-3


class TestClassification:
    """Test suite for pinching, classification and rigidity."""

    def test_pinching_branches(self, clifford, equator):
        assert sub.pinching_check(clifford[1], clifford[0]).branch == "equality"
        assert sub.pinching_check(equator[1], equator[0]).branch == "totally_geodesic"

    def test_clifford_reaches_equality_at_coarse_resolution(self, clifford):
        imm, data = clifford

        report = sub.pinching_check(data, imm)

        assert data.discretization_error is not None
        assert data.discretization_error < 1e-8
        assert report.branch == "equality"
        assert report.parallel

    def test_graph_flags_at_default_resolution(self, build_entry):
        imm = build_entry("graph_hypersurface", epsilon=0.2).instance
        data = sub.second_fundamental_form(imm)

        report = sub.classify(data)

        assert report.generic
        assert not report.totally_geodesic
        assert not report.totally_umbilical
        assert not report.minimal
        assert not report.cmc
        assert report.tolerance < 0.1 * report.residuals["mean_curvature_variation"]

    def test_clifford_is_parallel(self, clifford):
        imm, data = clifford

        assert sub.is_parallel(data, imm)

    def test_round_sphere_is_umbilical(self, sphere_in_flat):
        _, data = sphere_in_flat

        report = sub.classify(data)

        assert report.totally_umbilical
        assert report.cmc
        assert not report.minimal
        assert "generic" not in report.labels

    def test_traceless_part_of_umbilical_sphere(self, sphere_in_flat):
        imm, data = sphere_in_flat

        phi0 = sub.traceless_part(data)

        assert np.abs(phi0.data[imm.chart.interior_mask]).max() < 1e-3

    def test_clifford_constants(self):
        report = sub.clifford_constants_check(1, 2)

        assert report.lambda_1 == pytest.approx(math.sqrt(2.0))
        assert report.lambda_2 == pytest.approx(-1.0 / math.sqrt(2.0))
        assert report.identities_hold
        assert report.numeric_match is None

    def test_clifford_constants_reject_empty_factor(self):
        with pytest.raises(InvalidParameters):
            sub.clifford_constants_check(0, 2)

    def test_flat_slice_rigidity(self, build_entry):
        imm = build_entry("flat_subtorus", z0=0.5).instance

        report = sub.cmc_lp_rigidity_check(imm)

        assert report.applicable
        assert report.hypotheses_hold
        assert report.totally_geodesic
        assert report.consistent

    def test_graph_does_not_meet_hypotheses(self, build_entry):
        imm = build_entry("graph_hypersurface", resolution=32, epsilon=0.2).instance

        report = sub.cmc_lp_rigidity_check(imm)

        assert not report.cmc
        assert not report.hypotheses_hold
        assert report.consistent

    def test_compact_chart_not_applicable(self, sphere_in_flat):
        imm, data = sphere_in_flat

        report = sub.cmc_lp_rigidity_check(imm, data=data)

        assert not report.applicable
        assert report.lp_finite
        assert not report.cover_integrable
        assert report.lp_norm > 1.0
        assert report.consistent

    def test_pointwise_spike_breaks_conclusion(self, build_entry):
        imm = build_entry("flat_subtorus", z0=0.5).instance
        data = sub.second_fundamental_form(imm)
        phi = data.phi.copy()
        phi[8, 8, :, :, 0] = np.diag([4e-6, -4e-6])
        spiked = replace(data, phi=phi, phi_norm_sq=np.einsum("...ija,...ija->...", phi, phi))

        report = sub.cmc_lp_rigidity_check(imm, data=spiked, tol=1e-6)

        assert report.lp_finite
        assert report.cover_integrable
        assert report.hypotheses_hold
        assert not report.totally_geodesic
        assert not report.consistent
