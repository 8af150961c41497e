"""
Unit tests for the harmonic-map service.
"""

import math

import numpy as np
import pytest

from bochner_lab.core.exceptions import NotClosedManifold
from bochner_lab.domain.maps.services import map_service


class TestEnergy:
    """Test suite for energy densities."""

    def test_identity_of_flat_torus(self, build_entry):
        f = build_entry("identity_map", manifold="flat_torus").instance

        report = map_service.dirichlet_energy(f)

        assert report.integral_e == pytest.approx(4.0 * math.pi**2)
        assert report.half_integral_e == pytest.approx(2.0 * math.pi**2)
        assert report.integral_trace == pytest.approx(8.0 * math.pi**2)
        assert report.finite

    def test_linear_torus_map_density(self, build_entry):
        f = build_entry("linear_torus_map", matrix=[[2, 0], [0, 1]]).instance

        np.testing.assert_allclose(map_service.energy_density(f).data, 2.5)
        np.testing.assert_allclose(map_service.trace_energy(f), 5.0)

    def test_sphere_chart_note(self, build_entry):
        f = build_entry("identity_map").instance

        report = map_service.dirichlet_energy(f)

        assert any("pole caps" in note for note in report.notes)


class TestHarmonicity:
    """Test suite for tension and the Weitzenboeck residual."""

    def test_linear_torus_map_is_exact(self, build_entry):
        f = build_entry("linear_torus_map", matrix=[[2, 1], [1, 1]]).instance

        report = map_service.weitzenboeck_residual(f)

        assert report.harmonic
        assert not report.informational
        assert report.max_abs < 1e-12

    def test_identity_of_round_sphere(self, build_entry):
        f = build_entry("identity_map", resolution=32).instance

        assert map_service.is_harmonic(f).harmonic
        assert map_service.weitzenboeck_residual(f).max_abs < 1e-8

    def test_latitude_circle_tension(self, build_entry):
        theta0 = math.pi / 3
        f = build_entry("circle_to_sphere", resolution=64, theta0=theta0).instance

        report = map_service.is_harmonic(f)

        assert not report.harmonic
        assert report.max_tension == pytest.approx(math.sin(theta0) * math.cos(theta0), rel=1e-10)

    def test_non_harmonic_residual_is_informational(self, build_entry, caplog):
        f = build_entry("circle_to_sphere", resolution=64, theta0=1.0).instance

        report = map_service.weitzenboeck_residual(f)

        assert report.informational
        assert "not harmonic" in caplog.text

    def test_equator_circle_is_harmonic(self, build_entry):
        f = build_entry("circle_to_sphere", theta0=math.pi / 2).instance

        assert map_service.is_harmonic(f).harmonic

    def test_constant_map_has_zero_hessian(self, build_entry):
        f = build_entry("constant_map", manifold="flat_torus").instance

        assert not map_service.hessian_norm_sq(f).any()
        assert not map_service.q_term(f).data.any()


class TestCurvatureTerms:
    """Test suite for Q(f), its lower bound and the curvature hypotheses."""

    def test_q_vanishes_for_sphere_identity(self, build_entry):
        f = build_entry("identity_map").instance

        np.testing.assert_allclose(map_service.q_term(f).data, 0.0, atol=1e-10)

    def test_q_eigenframe_identity(self, build_entry):
        f = build_entry("equator_map").instance

        report = map_service.q_eigenframe_identity(f)

        assert report.max_residual <= 1e-10 * max(1.0, report.scale)

    def test_phi_eigenvalues_descend(self, build_entry):
        f = build_entry("linear_torus_map", matrix=[[2, 0], [0, 1]]).instance

        phi = map_service.phi_tensor(f)

        np.testing.assert_allclose(phi.eigenvalues[0, 0], [4.0, 1.0])

    def test_q_bound_certified_on_sphere(self, build_entry):
        f = build_entry("identity_map").instance

        report = map_service.q_bound_check(f)

        assert report.holds
        assert report.uncertified_nodes == 0
        assert report.certified_nodes > 0

    def test_hypotheses_depend_on_normalization(self, build_entry):
        f = build_entry("identity_map").instance

        relaxed = map_service.check_hypotheses_2_3(f)
        strict = map_service.check_hypotheses_2_3(f, strict=True)

        assert relaxed.passes
        assert relaxed.energy_normalization == "half_trace"
        assert not strict.passes
        assert strict.trace.failing_nodes > 0
        assert relaxed.certified

    def test_eells_sampson_on_flat_target(self, build_entry):
        f = build_entry("linear_torus_map").instance

        report = map_service.eells_sampson_check(f)

        assert report.hypotheses_hold
        assert report.conclusion_holds
        assert report.certified

    def test_integral_q_on_torus(self, build_entry):
        f = build_entry("identity_map", manifold="flat_torus").instance

        report = map_service.integral_q_check(f)

        assert report.verdict
        assert not report.approximate

    def test_integral_q_needs_closed_domain(self, build_entry):
        f = build_entry("identity_map").instance

        with pytest.raises(NotClosedManifold):
            map_service.integral_q_check(f)

        report = map_service.integral_q_check(f, allow_margin=True)
        assert report.approximate
