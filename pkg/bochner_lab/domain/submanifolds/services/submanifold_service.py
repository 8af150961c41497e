"""
Extrinsic geometry of immersions.

Index conventions: tangent[..., i, alpha] = F_i^alpha, phi[..., i, j, a] and
covariant derivatives carry the derivative slot first,
nabla[..., k, i, j, a] = (nabla-tilde_k phi)_a(e_i, e_j).
"""

import logging
import math
from dataclasses import replace
from typing import List, Optional, Sequence

import numpy as np

from bochner_lab.core.exceptions import (
    AmbientNotSpaceForm,
    DegenerateImmersion,
    HypersurfaceOnly,
    InvalidParameters,
    ValidationError,
)
from bochner_lab.domain.geometry.models.connection import (
    christoffel_from_jet,
    ricci_from_riemann,
    scalar_from_ricci,
    space_form_riemann,
)
from bochner_lab.domain.geometry.models.fields import CurvatureBundle, TensorField
from bochner_lab.domain.geometry.schemas.chart import MAX_MARGIN
from bochner_lab.domain.geometry.services.curvature import (
    build_levi_civita,
    curvature_extremes_field,
)
from bochner_lab.domain.geometry.services.finite_difference import FiniteDifference
from bochner_lab.domain.geometry.services.linalg import (
    deterministic_sum,
    generalized_eigh,
    max_abs,
)
from bochner_lab.domain.geometry.services.operators import (
    integrate,
    laplacian_array,
    lp_norm,
)
from bochner_lab.domain.geometry.services.tolerance import estimated_tolerance, identity_tolerance
from bochner_lab.domain.submanifolds.models.immersion import (
    RANK_FLOOR,
    Immersion,
    NormalFrame,
    SecondFundamentalData,
)
from bochner_lab.domain.submanifolds.schemas.reports import (
    ClassificationReport,
    CliffordConstantsReport,
    CmcRigidityReport,
    CodazziReport,
    GaussConsistencyReport,
    PinchingReport,
    SimonsReport,
)

logger = logging.getLogger(__name__)

CLIFFORD_NOTE = "lambda_2 = -sqrt(n1/n2) is the value forced by n1 lambda_1 + n2 lambda_2 = 0"


def _node_max(values: np.ndarray, grid_ndim: int) -> np.ndarray:
    """Largest absolute component at every node."""
    values = np.abs(values)
    extra = tuple(range(grid_ndim, values.ndim))
    return values.max(axis=extra) if extra else values


def _form_norm(form: np.ndarray, g_inv: np.ndarray) -> np.ndarray:
    return np.sqrt(np.maximum(np.einsum("...ij,...i,...j->...", g_inv, form, form), 0.0))


def _require_space_form(imm: Immersion) -> float:
    curvature = imm.ambient_constant_curvature
    if curvature is None:
        raise AmbientNotSpaceForm()
    return float(curvature)


def _require_hypersurface(codimension: int) -> None:
    if codimension != 1:
        raise HypersurfaceOnly(codimension)


def _center(shape: Sequence[int]):
    return tuple(s // 2 for s in shape)


def _project_normal(imm: Immersion, vectors: np.ndarray) -> np.ndarray:
    """Remove the tangential part of ambient vectors, shape grid + (N,)."""
    tangent = imm.tangent
    lowered = np.einsum("...ab,...ib->...ia", imm.ambient_metric, tangent)
    coeff = np.einsum("...ia,...a->...i", lowered, vectors)
    return vectors - np.einsum(
        "...ij,...j,...ia->...a", imm.induced_metric.inverse, coeff, tangent
    )


def _ambient_inner(imm: Immersion, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.einsum("...ab,...a,...b->...", imm.ambient_metric, x, y)


def _hypersurface_normal(imm: Immersion) -> NormalFrame:
    """
    Unit normal from the null vector of the tangent frame in Cholesky
    coordinates of g-bar, oriented by det[tangents; normal] > 0.
    """
    chol = np.linalg.cholesky(imm.ambient_metric)
    rows = imm.tangent @ chol
    _, _, vh = np.linalg.svd(rows, full_matrices=True)
    null = vh[..., -1, :]
    square = np.concatenate([rows, null[..., None, :]], axis=-2)
    null = null * np.sign(np.linalg.det(square))[..., None]
    normal = np.linalg.solve(np.swapaxes(chol, -1, -2), null[..., None])[..., 0]

    orientation = 1
    if imm.normal_reference is not None:
        reference = np.asarray(imm.normal_reference, dtype=float)
        center = _center(imm.chart.shape)
        if _ambient_inner(imm, normal, reference)[center] < 0.0:
            orientation = -1
            normal = -normal
    return NormalFrame(vectors=normal[..., None, :], orientation=orientation)


def _gram_schmidt(imm: Immersion, candidates: List[np.ndarray]) -> np.ndarray:
    frame: List[np.ndarray] = []
    for candidate in candidates:
        v = _project_normal(imm, candidate)
        for _ in range(2):
            for previous in frame:
                v = v - _ambient_inner(imm, v, previous)[..., None] * previous
        norm = np.sqrt(np.maximum(_ambient_inner(imm, v, v), 0.0))
        if not np.all(norm > RANK_FLOOR):
            node = np.unravel_index(int(np.argmin(norm)), imm.chart.shape)
            raise DegenerateImmersion(tuple(int(i) for i in node), float(norm[node]))
        frame.append(v / norm[..., None])
    return np.stack(frame, axis=-2)


def _greedy_axes(imm: Immersion) -> List[np.ndarray]:
    """Coordinate axes whose normal parts stay largest over the whole grid."""
    shape = imm.chart.shape + (imm.ambient_dim,)
    chosen: List[np.ndarray] = []
    remaining = list(range(imm.ambient_dim))
    for _ in range(imm.codimension):
        best_axis, best_score = remaining[0], -1.0
        for axis in remaining:
            axis_vector = np.zeros(shape)
            axis_vector[..., axis] = 1.0
            v = _project_normal(imm, axis_vector)
            for previous in chosen:
                p = _project_normal(imm, previous)
                p = p / np.sqrt(np.maximum(_ambient_inner(imm, p, p), 1e-300))[..., None]
                v = v - _ambient_inner(imm, v, p)[..., None] * p
            score = float(np.sqrt(np.maximum(_ambient_inner(imm, v, v), 0.0)).min())
            if score > best_score:
                best_axis, best_score = axis, score
        axis_vector = np.zeros(shape)
        axis_vector[..., best_axis] = 1.0
        chosen.append(axis_vector)
        remaining.remove(best_axis)
        logger.debug("normal frame axis %s (min normal part %.3e)", best_axis, best_score)
    return chosen


def _check_continuity(imm: Immersion, vectors: np.ndarray) -> None:
    gbar = imm.ambient_metric
    for axis, (n, per) in enumerate(zip(imm.chart.shape, imm.chart.periodic)):
        stop = n if per else n - 1
        here = np.take(vectors, range(stop), axis=axis)
        there = np.take(vectors, [(i + 1) % n for i in range(stop)], axis=axis)
        g = np.take(gbar, range(stop), axis=axis)
        overlap = np.einsum("...ab,...ka,...kb->...k", g, here, there)
        if np.any(overlap <= 0.0):
            raise ValidationError(f"normal frame flips between adjacent nodes along axis {axis}")


def normal_frame(imm: Immersion) -> NormalFrame:
    """
    g-bar-orthonormal normal frame of an immersion.

    Hypersurfaces get the oriented unit normal, flipped globally to agree
    with normal_reference at the central node. Higher codimension uses the
    reference vectors when given, otherwise the coordinate axes with the
    largest normal parts, Gram-Schmidt orthonormalized node by node.

    Raises:
        DegenerateImmersion: if the tangent frame or the normal candidates degenerate
        ValidationError: if the frame changes sign between adjacent nodes
    """
    imm.induced_metric  # raises DegenerateImmersion
    if imm.codimension == 1:
        frame = _hypersurface_normal(imm)
    else:
        if imm.normal_reference is not None:
            reference = np.asarray(imm.normal_reference, dtype=float)
            candidates = [reference[..., a, :] for a in range(imm.codimension)]
        else:
            candidates = _greedy_axes(imm)
        frame = NormalFrame(vectors=_gram_schmidt(imm, candidates))
    _check_continuity(imm, frame.vectors)
    return frame


def normal_frame_defect(imm: Immersion, frame: NormalFrame) -> float:
    """max |g-bar(N_a, N_b) - delta_ab| and max |g-bar(N_a, F_i)| / |F_i|."""
    gbar = imm.ambient_metric
    gram = np.einsum("...ab,...ca,...db->...cd", gbar, frame.vectors, frame.vectors)
    orthonormal = np.abs(gram - np.eye(frame.count)).max()
    tangent = imm.tangent
    cross = np.einsum("...ab,...ca,...ib->...ci", gbar, frame.vectors, tangent)
    lengths = np.sqrt(np.einsum("...ab,...ia,...ib->...i", gbar, tangent, tangent))
    tangential = np.abs(cross / lengths[..., None, :]).max()
    return float(max(orthonormal, tangential))


def induced_christoffel(imm: Immersion) -> np.ndarray:
    """Gamma^k_ij = g^kl g-bar(nabla-bar_{F_i} F_j, F_l)."""
    lowered = np.einsum("...ab,...lb->...la", imm.ambient_metric, imm.tangent)
    first_kind = np.einsum("...ija,...la->...lij", imm.ambient_hessian, lowered)
    gamma = np.einsum("...kl,...lij->...kij", imm.induced_metric.inverse, first_kind)
    return 0.5 * (gamma + np.swapaxes(gamma, -1, -2))


def _shape_invariants(imm: Immersion):
    metric = imm.induced_metric
    frame = normal_frame(imm)
    lowered = np.einsum("...ab,...cb->...ca", imm.ambient_metric, frame.vectors)
    phi = np.einsum("...ija,...ca->...ijc", imm.ambient_hessian, lowered)
    phi = 0.5 * (phi + np.swapaxes(phi, -2, -3))
    g_inv = metric.inverse
    mean = np.einsum("...ij,...ija->...a", g_inv, phi) / imm.dim
    norm_sq = np.einsum("...ik,...jl,...ija,...kla->...", g_inv, g_inv, phi, phi)
    return metric, frame, phi, mean, norm_sq


def _alternate_immersion(imm: Immersion) -> Optional[Immersion]:
    """The same immersion under the other stencil order, margins widened to fit it."""
    order = 4 if imm.order == 2 else 2
    chart = imm.chart
    margin = list(chart.margin)
    for axis in range(chart.dim):
        if not chart.periodic[axis]:
            margin[axis] = max(margin[axis], (order // 2) / (chart.resolution[axis] - 1))
    if max(margin) > MAX_MARGIN:
        return None
    return replace(imm, chart=chart.model_copy(update={"margin": margin}), order=order)


def _discretization_error(imm: Immersion, mean: np.ndarray, norm_sq: np.ndarray) -> Optional[float]:
    alternate = _alternate_immersion(imm)
    if alternate is None:
        return None
    _, _, _, alt_mean, alt_norm_sq = _shape_invariants(alternate)
    mask = alternate.chart.interior_mask
    if imm.codimension == 1:
        mean_gap = mean[..., 0] - alt_mean[..., 0]
    else:
        mean_gap = np.linalg.norm(mean, axis=-1) - np.linalg.norm(alt_mean, axis=-1)
    gaps = (
        np.sqrt(np.maximum(norm_sq, 0.0)) - np.sqrt(np.maximum(alt_norm_sq, 0.0)),
        norm_sq - alt_norm_sq,
        mean_gap,
    )
    return max(max_abs(gap, mask) for gap in gaps)


def second_fundamental_form(imm: Immersion) -> SecondFundamentalData:
    """
    Normal projection of the ambient second derivative.

    The invariants are recomputed with the other stencil order; their largest
    change is kept as the discretization error behind the default tolerances
    of classify and pinching_check.

    Args:
        imm: Immersion

    Returns:
        SecondFundamentalData with phi, H, ||phi||^2 and, for hypersurfaces, A

    Raises:
        DegenerateImmersion: if the Jacobian is rank-deficient at some node
    """
    metric, frame, phi, mean, norm_sq = _shape_invariants(imm)
    shape = None
    if imm.codimension == 1:
        shape = np.einsum("...ik,...kj->...ij", metric.inverse, phi[..., 0])
    error = _discretization_error(imm, mean, norm_sq)
    logger.debug(
        "second fundamental form of %s: n=%s, k=%s, max |phi|^2=%.6g, error estimate %s",
        imm.name,
        imm.dim,
        imm.codimension,
        float(norm_sq.max()),
        error,
    )
    return SecondFundamentalData(
        metric=metric,
        frame=frame,
        phi=phi,
        mean_curvature=mean,
        phi_norm_sq=norm_sq,
        christoffel=induced_christoffel(imm),
        shape_operator=shape,
        order=imm.order,
        discretization_error=error,
    )


def shape_operator_defect(data: SecondFundamentalData) -> float:
    """max |g A - (g A)^T|; zero for a g-self-adjoint shape operator."""
    _require_hypersurface(data.codimension)
    lowered = np.einsum("...ik,...kj->...ij", data.metric.components, data.shape_operator)
    return float(np.abs(lowered - np.swapaxes(lowered, -1, -2)).max())


def gauss_curvature(imm: Immersion, data: Optional[SecondFundamentalData] = None) -> CurvatureBundle:
    """
    Intrinsic curvature from the Gauss equation
    R_ijkl = R-bar(F_i, F_j, F_k, F_l) + sum_a (phi_a,ik phi_a,jl - phi_a,il phi_a,jk).
    """
    data = second_fundamental_form(imm) if data is None else data
    g = data.metric.components
    if imm.ambient_constant_curvature is not None:
        ambient = space_form_riemann(g, imm.ambient_constant_curvature)
    else:
        tangent = imm.tangent
        ambient = np.einsum(
            "...abcd,...ia,...jb,...kc,...ld->...ijkl",
            imm.ambient_riemann,
            tangent,
            tangent,
            tangent,
            tangent,
            optimize=True,
        )
    phi = data.phi
    riemann = ambient + np.einsum("...ika,...jla->...ijkl", phi, phi) - np.einsum(
        "...ila,...jka->...ijkl", phi, phi
    )
    ricci = ricci_from_riemann(data.metric.inverse, riemann)
    return CurvatureBundle(
        christoffel=data.christoffel,
        riemann=riemann,
        ricci=ricci,
        scalar=scalar_from_ricci(data.metric.inverse, ricci),
        mode="gauss",
        order=imm.order,
    )


def gauss_consistency_check(
    imm: Immersion, data: Optional[SecondFundamentalData] = None, tol: Optional[float] = None
) -> GaussConsistencyReport:
    """
    Compare Gauss-formula Christoffels and curvature with finite differences
    of the induced metric over non-margin nodes.
    """
    data = second_fundamental_form(imm) if data is None else data
    metric = data.metric
    mask = imm.chart.interior_mask
    dim = imm.dim
    fd_gamma = christoffel_from_jet(metric.inverse, imm.fd.gradient(metric.components))
    christoffel_max = max_abs(_node_max(data.christoffel - fd_gamma, dim), mask)
    fd_curvature = build_levi_civita(metric, "finite_difference", imm.order)
    riemann_max = max_abs(_node_max(gauss_curvature(imm, data).riemann - fd_curvature.riemann, dim), mask)
    scale = max(1.0, max_abs(_node_max(data.christoffel, dim), mask), float(data.phi_norm_sq.max()))
    tol = identity_tolerance(imm.chart, imm.order, scale=scale) if tol is None else tol
    return GaussConsistencyReport(
        christoffel_max=christoffel_max,
        riemann_max=riemann_max,
        passes=christoffel_max <= tol and riemann_max <= tol,
        tolerance=tol,
    )


def normal_connection(imm: Immersion, frame: NormalFrame) -> np.ndarray:
    """omega[..., k, a, b] = g-bar(nabla-bar_{F_k} N_a, N_b)."""
    vectors = frame.vectors
    derivative = imm.fd.gradient(vectors)
    derivative = derivative + np.einsum(
        "...abc,...kb,...dc->...kda", imm.ambient_christoffel, imm.tangent, vectors
    )
    return np.einsum("...kda,...ab,...eb->...kde", derivative, imm.ambient_metric, vectors)


def _covariant_phi(data: SecondFundamentalData, fd: FiniteDifference) -> np.ndarray:
    phi, gamma = data.phi, data.christoffel
    nabla = fd.gradient(phi)
    nabla = nabla - np.einsum("...lki,...lja->...kija", gamma, phi)
    return nabla - np.einsum("...lkj,...ila->...kija", gamma, phi)


def vdwb_derivative(data: SecondFundamentalData, imm: Immersion) -> np.ndarray:
    """
    Van der Waerden-Bortolotti derivative of phi: the induced connection on
    the tangent slots and the normal connection on the normal slot.

    Returns:
        nabla[..., k, i, j, b] = nabla_k phi_b,ij + sum_a phi_a,ij omega_ab,k

    Raises:
        StencilOutOfDomain: if the stencil does not fit a non-periodic margin
    """
    nabla = _covariant_phi(data, imm.fd)
    omega = normal_connection(imm, data.frame)
    return nabla + np.einsum("...ija,...kab->...kijb", data.phi, omega)


def _vdwb_norm_sq(data: SecondFundamentalData, nabla: np.ndarray) -> np.ndarray:
    g_inv = data.metric.inverse
    return np.einsum(
        "...kp,...iq,...jr,...kija,...pqra->...", g_inv, g_inv, g_inv, nabla, nabla, optimize=True
    )


def _shape_tolerance(data: SecondFundamentalData) -> float:
    return estimated_tolerance(data.discretization_error, data.metric.chart, data.order)


def _derivative_tolerance(data: SecondFundamentalData) -> float:
    chart = data.metric.chart
    scale = max(1.0, max_abs(data.phi_norm, chart.interior_mask))
    return identity_tolerance(chart, data.order, scale=scale)


def is_parallel(data: SecondFundamentalData, imm: Immersion, tol: Optional[float] = None) -> bool:
    """True when max |nabla-tilde phi| over non-margin nodes is within tol."""
    tol = _derivative_tolerance(data) if tol is None else tol
    norm = np.sqrt(np.maximum(_vdwb_norm_sq(data, vdwb_derivative(data, imm)), 0.0))
    return max_abs(norm, imm.chart.interior_mask) <= tol


def pinching_check(
    data: SecondFundamentalData, imm: Immersion, tol: Optional[float] = None
) -> PinchingReport:
    """
    ||phi||^2 against kn/(2k-1) C with the equality and totally geodesic branches.

    Raises:
        AmbientNotSpaceForm: if the ambient curvature is not constant
    """
    curvature = _require_space_form(imm)
    n, k = imm.dim, imm.codimension
    bound = k * n * curvature / (2 * k - 1)
    mask = imm.chart.interior_mask
    values = data.phi_norm_sq[mask]
    top, bottom = float(values.max()), float(values.min())
    parallel_tol = _derivative_tolerance(data) if tol is None else tol
    tol = _shape_tolerance(data) if tol is None else tol

    nabla_norm = np.sqrt(np.maximum(_vdwb_norm_sq(data, vdwb_derivative(data, imm)), 0.0))
    max_nabla = max_abs(nabla_norm, mask)
    max_mean = max_abs(data.scalar_mean_curvature, mask)
    constant = top - bottom <= tol
    totally_geodesic = top <= tol
    equality = constant and not totally_geodesic and abs(top - bound) <= tol
    below = top <= bound + tol
    if totally_geodesic:
        branch = "totally_geodesic"
    elif equality:
        branch = "equality"
    elif below:
        branch = "below_bound"
    else:
        branch = "above_bound"
    return PinchingReport(
        bound=bound,
        max_norm_sq=top,
        min_norm_sq=bottom,
        below_bound=below,
        constant=constant,
        equality_case=equality,
        totally_geodesic=totally_geodesic,
        minimal=max_mean <= tol,
        max_mean_curvature=max_mean,
        parallel=max_nabla <= parallel_tol,
        max_vdwb_norm=max_nabla,
        branch=branch,
        tolerance=tol,
        fields={"phi_norm_sq": data.phi_norm_sq, "vdwb_norm": nabla_norm},
    )


def simons_residual(
    data: SecondFundamentalData, imm: Immersion, tol: Optional[float] = None
) -> SimonsReport:
    """
    r = 1/2 Delta ||phi||^2 - ||nabla-tilde phi||^2 - (nC - (2 - 1/k)||phi||^2)||phi||^2.

    The identity is asserted for minimal hypersurfaces; codimension >= 2
    reports r >= -tol, and non-minimal input is informational.

    Raises:
        AmbientNotSpaceForm: if the ambient curvature is not constant
    """
    curvature = _require_space_form(imm)
    n, k = imm.dim, imm.codimension
    chart = imm.chart
    mask = chart.interior_mask
    norm_sq = data.phi_norm_sq
    lap = laplacian_array(norm_sq, data.metric, data.christoffel, imm.fd)
    grad_sq = _vdwb_norm_sq(data, vdwb_derivative(data, imm))
    potential = (n * curvature - (2.0 - 1.0 / k) * norm_sq) * norm_sq
    residual = 0.5 * lap - grad_sq - potential

    gate = _shape_tolerance(data)
    if tol is None:
        tol = identity_tolerance(chart, 2, scale=max(max_abs(data.phi_norm, mask), 1.0))
    max_mean = max_abs(data.scalar_mean_curvature, mask)
    minimal = max_mean <= gate
    if not minimal:
        logger.warning(
            "%s is not minimal within %.3e (max |H| %.3e); Simons residual is informational",
            imm.name,
            gate,
            max_mean,
        )
    worst = max_abs(residual, mask)
    lowest = float(residual[mask].min())
    if k == 1:
        holds = worst <= tol
    else:
        holds = lowest >= -tol
    l2 = float(np.sqrt(max(integrate(np.where(mask, residual**2, 0.0), data.metric), 0.0)))
    return SimonsReport(
        max_abs=worst,
        min_residual=lowest,
        l2=l2,
        max_mean_curvature=max_mean,
        minimal=minimal,
        informational=not minimal or k >= 2,
        passes=bool(minimal and holds),
        tolerance=tol,
        minimal_tolerance=gate,
        terms={
            "half_laplacian": max_abs(0.5 * lap, mask),
            "vdwb_norm_sq": max_abs(grad_sq, mask),
            "potential": max_abs(potential, mask),
        },
        fields={"residual": residual, "phi_norm_sq": norm_sq},
    )


def _divergence(tensor: np.ndarray, g_inv: np.ndarray, gamma: np.ndarray, fd: FiniteDifference):
    """(delta T)_j = -g^ik nabla_i T_kj for a symmetric array [..., i, j]."""
    term = np.einsum("...lki,...lj->...kij", gamma, tensor)
    nabla = fd.gradient(tensor) - term - np.swapaxes(term, -1, -2)
    return -np.einsum("...ik,...ikj->...j", g_inv, nabla)


def codazzi_residual(
    data: SecondFundamentalData, imm: Immersion, tol: Optional[float] = None
) -> CodazziReport:
    """
    max |nabla-tilde_k phi_ij - nabla-tilde_i phi_kj| and, for hypersurfaces,
    the residuals of delta phi = -n dH and delta phi0 = -(n-1) dH.

    Raises:
        AmbientNotSpaceForm: if the ambient curvature is not constant
    """
    _require_space_form(imm)
    chart = imm.chart
    mask = chart.interior_mask
    nabla = vdwb_derivative(data, imm)
    codazzi = nabla - np.swapaxes(nabla, -4, -3)
    codazzi_max = max_abs(_node_max(codazzi, chart.dim), mask)
    tol = _derivative_tolerance(data) if tol is None else tol

    divergence_max = traceless_max = delta_phi_max = n_dh_max = None
    residual_fields = {"codazzi": _node_max(codazzi, chart.dim)}
    passes = codazzi_max <= tol
    if imm.codimension == 1:
        n = imm.dim
        g_inv = data.metric.inverse
        mean = data.mean_curvature[..., 0]
        dh = imm.fd.gradient(mean)
        delta_phi = _divergence(data.phi[..., 0], g_inv, data.christoffel, imm.fd)
        traceless = data.phi[..., 0] - mean[..., None, None] * data.metric.components
        delta_traceless = _divergence(traceless, g_inv, data.christoffel, imm.fd)
        divergence = _form_norm(delta_phi + n * dh, g_inv)
        traceless_residual = _form_norm(delta_traceless + (n - 1) * dh, g_inv)
        divergence_max = max_abs(divergence, mask)
        traceless_max = max_abs(traceless_residual, mask)
        delta_phi_max = max_abs(_form_norm(delta_phi, g_inv), mask)
        n_dh_max = max_abs(_form_norm(n * dh, g_inv), mask)
        passes = passes and divergence_max <= tol and traceless_max <= tol
        residual_fields.update(
            {
                "divergence": divergence,
                "traceless_divergence": traceless_residual,
                "delta_phi": delta_phi,
                "dH": dh,
            }
        )
    return CodazziReport(
        codazzi_max=codazzi_max,
        divergence_max=divergence_max,
        traceless_divergence_max=traceless_max,
        delta_phi_max=delta_phi_max,
        n_dh_max=n_dh_max,
        passes=passes,
        tolerance=tol,
        fields=residual_fields,
    )


def traceless_part(data: SecondFundamentalData) -> TensorField:
    """
    phi0 = phi - H g of a hypersurface.

    Raises:
        HypersurfaceOnly: if the codimension is not 1
    """
    _require_hypersurface(data.codimension)
    mean = data.mean_curvature[..., 0]
    traceless = data.phi[..., 0] - mean[..., None, None] * data.metric.components
    return TensorField.sym2(data.metric.chart, traceless)


def principal_curvatures(data: SecondFundamentalData) -> np.ndarray:
    """
    Eigenvalues of the shape operator, ascending, at every node.

    Raises:
        HypersurfaceOnly: if the codimension is not 1
    """
    _require_hypersurface(data.codimension)
    values, _ = generalized_eigh(data.phi[..., 0], data.metric.components)
    return values


def clifford_constants_check(
    n1: int,
    n2: int,
    principal: Optional[np.ndarray] = None,
    tol: float = 1e-4,
) -> CliffordConstantsReport:
    """
    Principal curvatures of S^n1(sqrt(n1/n)) x S^n2(sqrt(n2/n)) in S^(n+1).

    Args:
        n1: Dimension of the first factor
        n2: Dimension of the second factor
        principal: Optional numeric principal curvatures [..., n] to compare,
            up to a global orientation sign
        tol: Tolerance of the numeric comparison

    Returns:
        CliffordConstantsReport

    Raises:
        InvalidParameters: if n1 < 1 or n2 < 1
    """
    if n1 < 1 or n2 < 1:
        raise InvalidParameters(f"factor dimensions must be >= 1, got ({n1}, {n2})")
    n = n1 + n2
    lambda_1 = math.sqrt(n2 / n1)
    lambda_2 = -math.sqrt(n1 / n2)
    trace_identity = n1 * lambda_1 + n2 * lambda_2
    square_identity = n1 * lambda_1**2 + n2 * lambda_2**2 - n
    exact = 1e-12 * n
    deviation = match = None
    if principal is not None:
        values = np.sort(np.asarray(principal, dtype=float).reshape(-1, n), axis=-1)
        expected = np.sort(np.array([lambda_1] * n1 + [lambda_2] * n2))
        flipped = np.sort(-values, axis=-1)
        deviation = float(
            min(np.abs(values - expected).max(), np.abs(flipped - expected).max())
        )
        match = deviation <= tol
    return CliffordConstantsReport(
        n1=n1,
        n2=n2,
        lambda_1=lambda_1,
        lambda_2=lambda_2,
        trace_identity=trace_identity,
        square_identity=square_identity,
        identities_hold=abs(trace_identity) <= exact and abs(square_identity) <= exact,
        numeric_deviation=deviation,
        numeric_match=match,
        tolerance=tol,
        notes=[CLIFFORD_NOTE],
    )


def _interior_mean(values: np.ndarray, mask: np.ndarray) -> float:
    return deterministic_sum(values, mask) / max(int(mask.sum()), 1)


def classify(data: SecondFundamentalData, tol: Optional[float] = None) -> ClassificationReport:
    """Totally geodesic, umbilical, minimal and cmc flags with their residuals."""
    chart = data.metric.chart
    mask = chart.interior_mask
    tol = _shape_tolerance(data) if tol is None else tol
    g = data.metric.components
    g_inv = data.metric.inverse
    umbilic = data.phi - np.einsum("...ij,...a->...ija", g, data.mean_curvature)
    umbilic_norm = np.sqrt(
        np.maximum(np.einsum("...ik,...jl,...ija,...kla->...", g_inv, g_inv, umbilic, umbilic), 0.0)
    )
    if data.codimension == 1:
        mean = data.mean_curvature[..., 0]
        cmc_residual = max_abs(mean - _interior_mean(mean, mask), mask)
    else:
        length = data.scalar_mean_curvature
        cmc_residual = max_abs(length - _interior_mean(length, mask), mask)
    residuals = {
        "phi_norm": max_abs(data.phi_norm, mask),
        "umbilicity": max_abs(umbilic_norm, mask),
        "mean_curvature": max_abs(data.scalar_mean_curvature, mask),
        "mean_curvature_variation": cmc_residual,
    }
    flags = {
        "totally_geodesic": residuals["phi_norm"] <= tol,
        "totally_umbilical": residuals["umbilicity"] <= tol,
        "minimal": residuals["mean_curvature"] <= tol,
        "cmc": cmc_residual <= tol,
    }
    return ClassificationReport(
        **flags,
        generic=not any(flags.values()),
        residuals=residuals,
        tolerance=tol,
    )


def cmc_lp_rigidity_check(
    imm: Immersion,
    p: float = 2.0,
    data: Optional[SecondFundamentalData] = None,
    tol: Optional[float] = None,
) -> CmcRigidityReport:
    """
    Evaluate: non-negative sectional curvature, constant H and ||phi|| in L^p
    force a hypersurface in a space form to be totally geodesic.

    A fully periodic chart stands for the complete non-compact universal
    cover, on which ||phi|| is L^p only when its integral over the
    fundamental domain vanishes; that integral is compared against
    tolerance * vol^(1/p). The conclusion is the pointwise test
    max ||phi|| <= tolerance. Other charts represent compact manifolds and
    are reported as not applicable.

    Raises:
        HypersurfaceOnly: if the codimension is not 1
        AmbientNotSpaceForm: if the ambient curvature is not constant
        InvalidExponent: if p < 1
    """
    _require_hypersurface(imm.codimension)
    _require_space_form(imm)
    data = second_fundamental_form(imm) if data is None else data
    tol = _shape_tolerance(data) if tol is None else tol
    mask = imm.chart.interior_mask
    phi_field = TensorField.sym2(imm.chart, data.phi[..., 0])
    norm = lp_norm(phi_field, data.metric, p)
    volume = integrate(np.ones(imm.chart.shape), data.metric)
    cover_tol = tol * volume ** (1.0 / p)
    sectional, _ = curvature_extremes_field(gauss_curvature(imm, data), data.metric, "sec_min")
    min_sectional = float(sectional[mask].min())
    classification = classify(data, tol)
    applicable = imm.chart.is_closed
    lp_finite = math.isfinite(norm)
    cover_integrable = applicable and lp_finite and norm <= cover_tol
    nonnegative = min_sectional >= -tol
    hypotheses = applicable and nonnegative and classification.cmc and cover_integrable
    consistent = (not hypotheses) or classification.totally_geodesic
    notes = []
    if not applicable:
        notes.append("chart represents a compact manifold; the non-compactness hypothesis fails")
    else:
        notes.append("L^p integrability evaluated on the universal cover of the periodic chart")
    if hypotheses and not consistent:
        notes.append("||phi|| integrates to zero but exceeds the tolerance pointwise")
    return CmcRigidityReport(
        p=p,
        lp_norm=norm,
        applicable=applicable,
        lp_finite=lp_finite,
        cover_integrable=cover_integrable,
        cover_tolerance=cover_tol,
        min_sectional=min_sectional,
        nonnegative_sectional=nonnegative,
        cmc=classification.cmc,
        hypotheses_hold=hypotheses,
        totally_geodesic=classification.totally_geodesic,
        consistent=consistent,
        tolerance=tol,
        notes=notes,
    )
