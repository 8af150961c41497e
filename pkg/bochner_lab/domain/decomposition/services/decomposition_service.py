"""
L2-orthogonal decomposition of symmetric two-tensors and the integral
formula for hypersurfaces.
"""

import logging
from typing import Optional, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from bochner_lab.core.exceptions import (
    AmbientNotSpaceForm,
    NotClosedManifold,
    SolverDiverged,
    ValidationError,
)
from bochner_lab.domain.decomposition.models.decomposition import DecompositionResult
from bochner_lab.domain.decomposition.schemas.reports import (
    SCALING_NOTE,
    DecompositionReport,
    IntegralFormulaReport,
)
from bochner_lab.domain.decomposition.schemas.solver import SolverConfig
from bochner_lab.domain.decomposition.services.ahlfors import (
    assemble_deformation,
    cauchy_ahlfors,
    flatten_components,
    tensor_mass,
    unflatten_components,
)
from bochner_lab.domain.decomposition.services.conjugate_gradient import ConjugateGradient
from bochner_lab.domain.geometry.models.fields import (
    CurvatureBundle,
    FieldRole,
    MetricField,
    TensorField,
)
from bochner_lab.domain.geometry.services.linalg import deterministic_sum, max_abs
from bochner_lab.domain.geometry.services.operators import (
    connection,
    covariant_derivative,
    divergence_sym2,
    inner_product,
    integrate,
    pointwise_norm,
    resolve_order,
    trace_g,
)
from bochner_lab.domain.geometry.services.tolerance import identity_tolerance
from bochner_lab.domain.submanifolds.models.immersion import Immersion
from bochner_lab.domain.submanifolds.services.submanifold_service import (
    classify,
    gauss_curvature,
    second_fundamental_form,
    traceless_part,
)

logger = logging.getLogger(__name__)

INTEGRAL_SCALE = 4.0
KERNEL_SHIFT = 1e-2
KERNEL_MAXITER_FACTOR = 10
DENSE_KERNEL_SIZE = 4096


def _dense_kernel(operator: sparse.spmatrix, kernel_tol: float) -> np.ndarray:
    values, vectors = np.linalg.eigh(operator.toarray())
    top = float(values[-1])
    if top <= 0.0:
        return np.eye(operator.shape[0])
    return vectors[:, values < kernel_tol * top]


def _lanczos_near_zero(
    operator: sparse.spmatrix, k: int, shift: float, v0: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    size = operator.shape[0]
    try:
        return eigsh(
            operator,
            k=k,
            sigma=shift,
            which="LM",
            v0=v0,
            ncv=min(size - 1, max(2 * k + 1, 20)),
            maxiter=KERNEL_MAXITER_FACTOR * size,
        )
    except ArpackNoConvergence as exc:
        logger.debug("kernel window of %s modes: %s converged", k, len(exc.eigenvalues))
        return exc.eigenvalues, exc.eigenvectors


def detect_kernel(
    operator: sparse.spmatrix, kernel_tol: float = 1e-8, seed: int = 0
) -> np.ndarray:
    """
    Orthonormal basis of the numerical kernel of a symmetric PSD matrix.

    Eigenvectors with Rayleigh quotient below kernel_tol times the largest
    Rayleigh quotient. Systems up to DENSE_KERNEL_SIZE are diagonalized
    directly; larger ones use shift-invert Lanczos near zero, keeping the
    converged pairs of a partial run and doubling the window until a
    non-kernel eigenvalue is seen.

    Raises:
        SolverDiverged: if the largest eigenvalue or the Lanczos window does not converge
    """
    size = operator.shape[0]
    if size <= DENSE_KERNEL_SIZE:
        basis = _dense_kernel(operator, kernel_tol)
        logger.debug("kernel dimension %s (dense, size %s)", basis.shape[1], size)
        return basis
    rng = np.random.default_rng(seed)
    v0 = rng.standard_normal(size)
    try:
        top = float(eigsh(operator, k=1, which="LA", v0=v0, return_eigenvectors=False)[0])
    except ArpackNoConvergence as exc:
        raise SolverDiverged("largest eigenvalue did not converge") from exc
    if top <= 0.0:
        return np.eye(size)
    threshold = kernel_tol * top
    shift = -KERNEL_SHIFT * top
    window = 8
    while True:
        k = min(window, size - 2)
        _, vectors = _lanczos_near_zero(operator, k, shift, v0)
        if vectors.shape[1]:
            quotients = np.einsum("ij,ij->j", vectors, operator @ vectors) / np.einsum(
                "ij,ij->j", vectors, vectors
            )
            kernel = quotients < threshold
            if not kernel.all():
                break
        if k == size - 2:
            if not vectors.shape[1]:
                raise SolverDiverged(f"kernel window of {k} modes did not converge")
            break
        window *= 2
    basis, _ = np.linalg.qr(vectors[:, kernel]) if kernel.any() else (np.zeros((size, 0)), None)
    logger.debug("kernel dimension %s (threshold %.3e)", basis.shape[1], threshold)
    return basis


def _christoffel(metric: MetricField, curv: Optional[CurvatureBundle], order: int) -> np.ndarray:
    return curv.christoffel if curv is not None else connection(metric, order)


def solve_decomposition(
    phi: TensorField,
    metric: MetricField,
    solver_cfg: Optional[SolverConfig] = None,
    curv: Optional[CurvatureBundle] = None,
    order: Optional[int] = None,
) -> DecompositionResult:
    """
    Split phi = (1/2 L_xi g + lambda g) + phi_TT on a closed chart.

    The trace-free part phi0 is projected onto the range of theta -> 1/2 S theta
    in the discrete L2 inner product; the normal equations are solved by CG
    with the numerical kernel (conformal Killing forms) projected out.

    Args:
        phi: Symmetric two-tensor
        metric: Metric field
        solver_cfg: Solver parameters, defaults from settings
        curv: Optional curvature bundle supplying Christoffel symbols
        order: Finite-difference order

    Returns:
        DecompositionResult

    Raises:
        NotClosedManifold: if the chart is not fully periodic
        SolverDiverged: if CG misses its residual target
    """
    if phi.role is not FieldRole.SYM2:
        raise ValidationError(f"expected a sym2 field, got {phi.role.value}")
    chart = metric.chart
    if not chart.is_closed:
        raise NotClosedManifold()
    cfg = SolverConfig.from_settings() if solver_cfg is None else solver_cfg
    order = resolve_order(order, curv)
    gamma = _christoffel(metric, curv, order)
    dim = chart.dim

    trace = trace_g(phi, metric)
    traceless = phi.data - (trace / dim)[..., None, None] * metric.components
    deformation = assemble_deformation(metric, gamma, order)
    mass = tensor_mass(metric)
    normal = (deformation.T @ mass @ deformation).tocsr()
    rhs = deformation.T @ (mass @ flatten_components(traceless, chart))

    kernel = detect_kernel(normal, cfg.kernel_tol, cfg.seed)
    solver = ConjugateGradient(
        normal,
        rtol=cfg.rtol,
        max_iterations=cfg.iteration_cap(normal.shape[0]),
        preconditioner=cfg.preconditioner,
        kernel=kernel,
    )
    solution, stats = solver.solve(rhs)
    theta = TensorField.one_form(chart, unflatten_components(solution, chart, (dim,)))

    nabla = covariant_derivative(theta, metric, order=order, curv=curv)
    gauge = 0.5 * (nabla + np.swapaxes(nabla, -1, -2))
    lam = np.einsum("...ij,...ij->...", metric.inverse, phi.data - gauge) / dim
    tt = phi.data - gauge - lam[..., None, None] * metric.components
    logger.debug(
        "decomposition on %s nodes: %s CG iterations, kernel dimension %s",
        chart.node_count,
        stats.iterations,
        stats.kernel_dimension,
    )
    return DecompositionResult(
        theta=theta,
        lambda_field=TensorField.scalar(chart, lam),
        tt_part=TensorField.sym2(chart, tt),
        gauge_part=TensorField.sym2(chart, gauge),
        solver_stats=stats,
    )


def decomposition_report(
    phi: TensorField,
    result: DecompositionResult,
    metric: MetricField,
    curv: Optional[CurvatureBundle] = None,
    order: Optional[int] = None,
    tol: Optional[float] = None,
) -> DecompositionReport:
    """Trace, divergence, reconstruction and orthogonality of a decomposition."""
    chart = metric.chart
    order = resolve_order(order, curv)
    gamma = _christoffel(metric, curv, order)
    tt = result.tt_part
    trace_max = max_abs(trace_g(tt, metric))

    deformation = assemble_deformation(metric, gamma, order)
    mass = tensor_mass(metric)
    weak = deformation.T @ (mass @ flatten_components(tt.data, chart))
    traceless = phi.data - (trace_g(phi, metric) / chart.dim)[..., None, None] * metric.components
    reference = deformation.T @ (mass @ flatten_components(traceless, chart))
    reference_norm = np.sqrt(deterministic_sum(reference * reference))
    weak_norm = np.sqrt(deterministic_sum(weak * weak))
    weak_divergence = weak_norm / reference_norm if reference_norm > 0 else weak_norm

    strong = divergence_sym2(tt, metric, curv, order)
    strong_max = max_abs(pointwise_norm(strong, metric))

    pure = result.gauge_part + TensorField.sym2(
        chart, result.lambda_field.data[..., None, None] * metric.components
    )
    reconstruction = phi - pure - tt
    reconstruction_l2 = float(np.sqrt(max(inner_product(reconstruction, reconstruction, metric), 0.0)))
    orthogonality = abs(inner_product(pure, tt, metric))
    theta_l2 = float(np.sqrt(max(inner_product(result.theta, result.theta, metric), 0.0)))
    tt_l2 = float(np.sqrt(max(inner_product(tt, tt, metric), 0.0)))
    volume = integrate(np.ones(chart.shape), metric)
    lambda_mean = integrate(result.lambda_field, metric) / volume

    phi_l2 = float(np.sqrt(max(inner_product(phi, phi, metric), 0.0)))
    stats = result.solver_stats
    tol = max(1e-6, 10.0 * stats.final_residual * max(1.0, phi_l2)) if tol is None else tol
    passes = (
        trace_max <= 1e-8 * max(1.0, phi_l2)
        and weak_divergence <= max(10.0 * stats.final_residual, 1e-10)
        and reconstruction_l2 <= tol
        and orthogonality <= tol
    )
    return DecompositionReport(
        trace_max=trace_max,
        weak_divergence=float(weak_divergence),
        strong_divergence_max=strong_max,
        reconstruction_l2=reconstruction_l2,
        orthogonality=orthogonality,
        theta_l2=theta_l2,
        lambda_mean=lambda_mean,
        tt_l2=tt_l2,
        passes=passes,
        tolerance=tol,
        notes=[SCALING_NOTE],
        fields={"strong_divergence": strong.data},
    )


def check_3_8_and_3_9(
    imm: Immersion,
    result: Optional[DecompositionResult] = None,
    solver_cfg: Optional[SolverConfig] = None,
    tol: Optional[float] = None,
) -> IntegralFormulaReport:
    """
    delta phi0 = -(n-1) dH node by node, and <S theta, S theta> against
    -(n-1) integral of L_xi H dv_g for the decomposition of phi.

    With the decomposition anchored on phi = (1/2 L_xi g + lambda g) + phi_TT
    the two sides of the integral formula differ by the factor 4, reported as
    scale_factor. When the integral of L_xi H vanishes, the report also checks
    the rigid branch: S theta = 0, H constant, phi = H g + phi_TT and phi0 a
    Codazzi TT-tensor.

    Raises:
        HypersurfaceOnly: if the codimension is not 1
        AmbientNotSpaceForm: if the ambient curvature is not constant
        NotClosedManifold: if the chart is not fully periodic
    """
    if imm.ambient_constant_curvature is None:
        raise AmbientNotSpaceForm()
    data = second_fundamental_form(imm)
    phi0 = traceless_part(data)
    chart = imm.chart
    if not chart.is_closed:
        raise NotClosedManifold()
    metric = data.metric
    curv = gauss_curvature(imm, data)
    n = imm.dim
    phi = TensorField.sym2(chart, data.phi[..., 0])
    if result is None:
        result = solve_decomposition(phi, metric, solver_cfg, curv, imm.order)

    mean = data.mean_curvature[..., 0]
    dh = imm.fd.gradient(mean)
    delta_phi0 = divergence_sym2(phi0, metric, curv, imm.order)
    rhs_form = TensorField.one_form(chart, -(n - 1) * dh)
    residual = delta_phi0 - rhs_form
    residual_max = max_abs(pointwise_norm(residual, metric))

    s_theta = cauchy_ahlfors(result.theta, metric, curv, imm.order)
    ahlfors_sq = inner_product(s_theta, s_theta, metric)
    lie_h = np.einsum("...ij,...i,...j->...", metric.inverse, result.theta.data, dh)
    lie_integral = integrate(lie_h, metric)
    formula_rhs = -(n - 1) * lie_integral
    difference = ahlfors_sq - INTEGRAL_SCALE * formula_rhs

    phi_inf = max(1.0, max_abs(data.phi_norm))
    divergence_tol = identity_tolerance(chart, imm.order, scale=phi_inf) if tol is None else tol
    scale = max(1.0, abs(ahlfors_sq), abs(INTEGRAL_SCALE * formula_rhs))
    integral_tol = max(1e-6, 10.0 * chart.max_spacing**2 * scale) if tol is None else tol

    lie_vanishes = abs(lie_integral) <= integral_tol
    ahlfors_vanishes = ahlfors_sq <= integral_tol
    classification = classify(data)
    split = phi - TensorField.sym2(chart, mean[..., None, None] * metric.components) - result.tt_part
    split_residual = float(np.sqrt(max(inner_product(split, split, metric), 0.0)))

    nabla = covariant_derivative(phi0, metric, curv, imm.order)
    codazzi = nabla - np.swapaxes(nabla, -3, -2)
    codazzi_max = max_abs(np.abs(codazzi).max(axis=(-3, -2, -1)))
    trace_max = max_abs(trace_g(phi0, metric))
    divergence_free = max_abs(pointwise_norm(delta_phi0, metric)) <= divergence_tol
    tt_codazzi = trace_max <= 1e-8 * phi_inf and divergence_free and codazzi_max <= divergence_tol
    rigid = ahlfors_vanishes and classification.cmc and split_residual <= divergence_tol
    notes = [SCALING_NOTE]
    if lie_vanishes and not rigid:
        logger.warning("integral of L_xi H vanishes on %s but the rigid branch fails", imm.name)
    return IntegralFormulaReport(
        divergence_lhs_max=max_abs(pointwise_norm(delta_phi0, metric)),
        divergence_rhs_max=max_abs(pointwise_norm(rhs_form, metric)),
        divergence_residual_max=residual_max,
        ahlfors_norm_sq=ahlfors_sq,
        lie_mean_integral=lie_integral,
        formula_rhs=formula_rhs,
        scale_factor=INTEGRAL_SCALE,
        difference=difference,
        integral_tolerance=integral_tol,
        divergence_tolerance=divergence_tol,
        formula_holds=abs(difference) <= integral_tol,
        divergence_holds=residual_max <= divergence_tol,
        lie_integral_vanishes=lie_vanishes,
        ahlfors_vanishes=ahlfors_vanishes,
        mean_curvature_constant=classification.cmc,
        umbilic_split_residual=split_residual,
        traceless_codazzi_max=codazzi_max,
        traceless_is_tt_codazzi=tt_codazzi,
        branch_consistent=(not lie_vanishes) or rigid,
        notes=notes,
        fields={"divergence_residual": residual.data, "lie_mean": lie_h},
    )
