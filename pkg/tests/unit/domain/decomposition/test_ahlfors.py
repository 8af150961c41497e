"""
Unit tests for the deformation operators and the conjugate-gradient solver.
"""

import numpy as np
import pytest
from scipy import sparse

from bochner_lab.core.exceptions import SolverDiverged, ValidationError
from bochner_lab.domain.decomposition.services.ahlfors import (
    ahlfors_laplacian,
    cauchy_ahlfors,
    codifferential,
    delta_star,
)
from bochner_lab.domain.decomposition.services.conjugate_gradient import ConjugateGradient
from bochner_lab.domain.decomposition.services import decomposition_service
from bochner_lab.domain.decomposition.services.decomposition_service import detect_kernel
from bochner_lab.domain.geometry.models.fields import FieldRole, TensorField
from bochner_lab.domain.geometry.services.operators import lie_derivative_metric, raise_index, trace_g


def periodic_laplacian(n: int) -> sparse.csr_matrix:
    """Singular 1D periodic second difference, kernel = constants."""
    main = 2.0 * np.ones(n)
    off = -np.ones(n - 1)
    matrix = sparse.diags([main, off, off], [0, 1, -1], format="lil")
    matrix[0, n - 1] = matrix[n - 1, 0] = -1.0
    return matrix.tocsr()


class TestDeformationOperators:
    """Test suite for delta*, S and S*S on the flat torus."""

    def test_cauchy_ahlfors_is_trace_free(self, wave_one_form, flat_metric):
        s_theta = cauchy_ahlfors(wave_one_form, flat_metric)

        assert s_theta.role is FieldRole.SYM2
        assert np.abs(trace_g(s_theta, flat_metric)).max() < 1e-12

    def test_codifferential_of_sine_form(self, torus_chart, flat_metric):
        x = torus_chart.mesh[..., 0]
        theta = TensorField.one_form(torus_chart, np.stack([np.sin(x), np.zeros_like(x)], axis=-1))

        delta = codifferential(theta, flat_metric, order=4)

        np.testing.assert_allclose(delta, -np.cos(x), atol=2e-4)

    def test_delta_star_is_half_lie_derivative(self, wave_one_form, flat_metric):
        lie = lie_derivative_metric(raise_index(wave_one_form, flat_metric), flat_metric)

        half = delta_star(wave_one_form, flat_metric)

        np.testing.assert_allclose(half.data, 0.5 * lie.data, atol=1e-14)

    def test_ahlfors_laplacian_eigenform(self, torus_chart, flat_metric):
        # S*S(sin x dx) = 4 (1 - 1/n) sin x dx on the flat 2-torus
        x = torus_chart.mesh[..., 0]
        theta = TensorField.one_form(torus_chart, np.stack([np.sin(x), np.zeros_like(x)], axis=-1))

        image = ahlfors_laplacian(theta, flat_metric, order=4)

        np.testing.assert_allclose(image.data, 2.0 * theta.data, atol=1e-3)

    def test_operators_need_a_one_form(self, flat_metric, torus_chart):
        scalar = TensorField.scalar(torus_chart, np.ones(torus_chart.shape))

        with pytest.raises(ValidationError):
            cauchy_ahlfors(scalar, flat_metric)
        with pytest.raises(ValidationError):
            codifferential(scalar, flat_metric)


class TestConjugateGradient:
    """Test suite for ConjugateGradient and detect_kernel."""

    def test_solves_spd_system(self):
        matrix = periodic_laplacian(40) + sparse.identity(40, format="csr")
        b = np.sin(np.linspace(0.0, 3.0, 40))

        x, stats = ConjugateGradient(matrix, rtol=1e-12, max_iterations=200).solve(b)

        np.testing.assert_allclose(x, np.linalg.solve(matrix.toarray(), b), atol=1e-10)
        assert stats.converged
        assert not stats.kernel_projection_applied

    def test_jacobi_preconditioner(self):
        diagonal = sparse.diags(np.linspace(1.0, 50.0, 30))
        matrix = (periodic_laplacian(30) + diagonal).tocsr()
        b = np.ones(30)

        x, stats = ConjugateGradient(matrix, rtol=1e-12, max_iterations=200, preconditioner="jacobi").solve(b)

        np.testing.assert_allclose(matrix @ x, b, atol=1e-9)
        assert stats.preconditioner == "jacobi"

    def test_singular_system_with_kernel(self):
        n = 32
        matrix = periodic_laplacian(n)
        kernel = np.ones((n, 1)) / np.sqrt(n)
        b = np.cos(2.0 * np.pi * np.arange(n) / n)

        x, stats = ConjugateGradient(matrix, rtol=1e-12, max_iterations=500, kernel=kernel).solve(b)

        np.testing.assert_allclose(matrix @ x, b, atol=1e-9)
        assert abs(x.sum()) < 1e-9
        assert stats.kernel_dimension == 1

    def test_zero_right_hand_side(self):
        x, stats = ConjugateGradient(periodic_laplacian(10)).solve(np.zeros(10))

        assert not x.any()
        assert stats.iterations == 0

    def test_iteration_cap_raises(self):
        matrix = periodic_laplacian(64) + sparse.identity(64, format="csr") * 1e-3
        b = np.random.default_rng(0).standard_normal(64)

        with pytest.raises(SolverDiverged) as exc_info:
            ConjugateGradient(matrix, rtol=1e-14, max_iterations=2).solve(b)

        assert exc_info.value.stats["iterations"] == 2

    def test_detect_kernel_of_periodic_laplacian(self):
        basis = detect_kernel(periodic_laplacian(32))

        assert basis.shape == (32, 1)
        np.testing.assert_allclose(np.abs(basis[:, 0]), 1.0 / np.sqrt(32), atol=1e-8)

    def test_detect_kernel_lanczos_path(self, monkeypatch):
        monkeypatch.setattr(decomposition_service, "DENSE_KERNEL_SIZE", 0)
        matrix = sparse.block_diag([periodic_laplacian(40)] * 3, format="csr")

        basis = detect_kernel(matrix)

        assert basis.shape == (120, 3)
        assert np.abs(matrix @ basis).max() < 1e-8
        np.testing.assert_allclose(basis.T @ basis, np.eye(3), atol=1e-8)
