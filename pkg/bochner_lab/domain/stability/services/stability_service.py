"""
Jacobi operator construction, spectra and the superharmonic chain.
"""

import logging
from typing import Optional, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from bochner_lab.core.config import get_settings
from bochner_lab.core.exceptions import (
    HypersurfaceOnly,
    InvalidParameters,
    SolverDiverged,
    ValidationError,
    ZeroCrossing,
)
from bochner_lab.domain.geometry.models.fields import FieldRole, TensorField
from bochner_lab.domain.geometry.services.laplacian import assemble_weak_laplacian
from bochner_lab.domain.geometry.services.linalg import max_abs
from bochner_lab.domain.geometry.services.operators import integrate, laplacian_array
from bochner_lab.domain.geometry.services.tolerance import estimated_tolerance, identity_tolerance
from bochner_lab.domain.stability.models.jacobi import JacobiOperator
from bochner_lab.domain.stability.schemas.reports import (
    RigidityReport,
    StabilitySpectrumReport,
    SuperharmonicReport,
)
from bochner_lab.domain.submanifolds.models.immersion import Immersion, SecondFundamentalData
from bochner_lab.domain.submanifolds.services.submanifold_service import second_fundamental_form

logger = logging.getLogger(__name__)

SPECTRAL_FLOOR = 1e-8
DENSE_SPECTRUM_SIZE = 2048
L1_NOTE = "integral of |u| is finite on a compact grid; the L^1 hypothesis is vacuous here"


def jacobi_operator(
    imm: Immersion, data: Optional[SecondFundamentalData] = None
) -> JacobiOperator:
    """
    Build L = Delta + ||phi||^2 + Ric-bar(N, N) for a hypersurface.

    Raises:
        HypersurfaceOnly: if the codimension is not 1
        DegenerateImmersion: if the Jacobian is rank-deficient at some node
    """
    if imm.codimension != 1:
        raise HypersurfaceOnly(imm.codimension)
    data = second_fundamental_form(imm) if data is None else data
    normal = data.frame.vectors[..., 0, :]
    normal_ricci = np.einsum("...ab,...a,...b->...", imm.ambient_ricci, normal, normal)
    potential = data.phi_norm_sq + normal_ricci
    op = JacobiOperator(data=data, potential=potential, normal_ricci=normal_ricci, name=imm.name)
    if op.ricci_negative:
        logger.warning(
            "Ric-bar(N, N) is negative on %s (min %.3e); V may change sign",
            imm.name,
            float(normal_ricci.min()),
        )
    return op


def _scalar(op: JacobiOperator, u) -> np.ndarray:
    if isinstance(u, TensorField):
        if u.role is not FieldRole.SCALAR:
            raise ValidationError(f"expected a scalar field, got {u.role.value}")
        u = u.data
    u = np.asarray(u, dtype=float)
    if u.shape != op.chart.shape:
        raise ValidationError(f"scalar has shape {u.shape}, expected {op.chart.shape}")
    return u


def _laplacian(op: JacobiOperator, values: np.ndarray) -> np.ndarray:
    return laplacian_array(values, op.metric, op.data.christoffel, op.fd)


def jacobi_apply(op: JacobiOperator, u) -> TensorField:
    """
    Lu = Delta u + V u with the strong stencil of the module's order.

    Raises:
        StencilOutOfDomain: if the stencil does not fit a non-periodic margin
    """
    values = _scalar(op, u)
    return TensorField.scalar(op.chart, _laplacian(op, values) + op.potential * values)


def weak_jacobi(op: JacobiOperator) -> Tuple[sparse.csr_matrix, np.ndarray]:
    """
    Symmetric matrix W^-1/2 (-K + W V) W^-1/2 of L in the lumped-mass
    inner product, with the scaling vector W^-1/2.

    Non-periodic chart edges carry the natural (Neumann) condition.
    """
    stiffness, mass = assemble_weak_laplacian(op.metric)
    if not np.all(mass > 0.0):
        raise ValidationError("lumped mass vanishes at some node")
    scale = 1.0 / np.sqrt(mass)
    scaling = sparse.diags(scale)
    matrix = -(scaling @ stiffness @ scaling) + sparse.diags(op.potential.ravel())
    return matrix.tocsr(), scale


def _top_eigenpairs(matrix: sparse.spmatrix, k: int, upper: float, seed: int, tol: float):
    if matrix.shape[0] <= DENSE_SPECTRUM_SIZE:
        values, vectors = np.linalg.eigh(matrix.toarray())
        return values[::-1][:k], vectors[:, ::-1][:, :k]
    rng = np.random.default_rng(seed)
    v0 = rng.standard_normal(matrix.shape[0])
    try:
        values, vectors = eigsh(matrix, k=k, sigma=upper, which="LM", v0=v0, tol=tol)
    except ArpackNoConvergence as exc:
        raise SolverDiverged(f"Lanczos iteration did not converge for {k} modes") from exc
    order = np.argsort(values)[::-1]
    return values[order], vectors[:, order]


def stability_spectrum(
    op: JacobiOperator,
    num_modes: Optional[int] = None,
    tol: Optional[float] = None,
    seed: Optional[int] = None,
) -> StabilitySpectrumReport:
    """
    The num_modes largest eigenvalues of L; stable iff lambda_max <= tol.

    Eigenvalues come from shift-invert Lanczos above the potential maximum,
    which bounds the spectrum since Delta is non-positive.

    Args:
        op: Jacobi operator
        num_modes: Eigenvalues to report, default NUM_MODES
        tol: Spectral tolerance, default 10 h^2 (||V|| + |lambda_top(Delta)|)
        seed: Lanczos start vector seed, default SEED

    Raises:
        InvalidParameters: if num_modes < 1
        SolverDiverged: if the eigensolver does not converge
    """
    settings = get_settings()
    num_modes = settings.NUM_MODES if num_modes is None else num_modes
    seed = settings.SEED if seed is None else seed
    if num_modes < 1:
        raise InvalidParameters(f"num_modes must be >= 1, got {num_modes}")
    matrix, scale = weak_jacobi(op)
    size = matrix.shape[0]
    k = min(num_modes, size - 1)
    v_max = float(op.potential.max())
    v_inf = max_abs(op.potential)

    values, vectors = _top_eigenpairs(matrix, k, v_max + 1.0, seed, settings.EIGEN_TOL)
    laplacian = matrix - sparse.diags(op.potential.ravel())
    laplacian_top = float(_top_eigenpairs(laplacian, 1, 1.0, seed, settings.EIGEN_TOL)[0][0])
    if tol is None:
        tol = max(SPECTRAL_FLOOR, 10.0 * op.chart.max_spacing**2 * (v_inf + abs(laplacian_top)))

    modes = vectors * scale[:, None]
    top = modes[:, 0]
    top_mode_variation = float((top.max() - top.min()) / max(np.abs(top).max(), 1e-300))
    lambda_max = float(values[0])
    stable = lambda_max <= tol

    witness = False
    if stable:
        for column in range(modes.shape[1]):
            mode = modes[:, column]
            mode = mode if mode.sum() >= 0 else -mode
            if np.all(matrix @ (mode / scale) > tol):
                witness = True
                break
    mean = op.data.scalar_mean_curvature
    minimal = max_abs(mean, op.chart.interior_mask) <= _potential_error(op)
    logger.info(
        "stability spectrum of %s: lambda_max=%.6g (tol %.3e), stable=%s",
        op.name,
        lambda_max,
        tol,
        stable,
    )
    return StabilitySpectrumReport(
        eigenvalues=[float(v) for v in values],
        lambda_max=lambda_max,
        stable=stable,
        tolerance=tol,
        laplacian_top=laplacian_top,
        potential_min=float(op.potential.min()),
        potential_max=v_max,
        ricci_negative=op.ricci_negative,
        minimal=minimal,
        top_mode_variation=top_mode_variation,
        consistent=not witness,
        fields={"modes": modes.T.reshape((k,) + op.chart.shape), "potential": op.potential},
    )


def _zero_threshold(values: np.ndarray) -> float:
    return get_settings().TOL_FLOOR * max(1.0, float(np.abs(values).max()))


def _terms_tolerance(op: JacobiOperator, *terms: np.ndarray) -> float:
    scale = max(max_abs(term, op.chart.interior_mask) for term in terms)
    return identity_tolerance(op.chart, op.order, scale=scale)


def _potential_error(op: JacobiOperator) -> float:
    return estimated_tolerance(op.data.discretization_error, op.chart, op.order)


def superharmonic_check(
    op: JacobiOperator, u, tol: Optional[float] = None
) -> SuperharmonicReport:
    """
    Evaluate 1/2 Delta u^2 = ||du||^2 + u Delta u and, when Lu <= 0 holds,
    the bound 1/2 Delta u^2 <= ||du||^2 - V u^2, over non-margin nodes.

    u is oriented positive before the sign tests. Each residual is compared
    against h^order times the size of its own terms; the potential adds its
    measured error times u. An explicit tol replaces all of them.

    Raises:
        ZeroCrossing: if u changes sign or |u| <= TOL_FLOOR * max |u| at some node
    """
    values = _scalar(op, u)
    magnitude = np.abs(values)
    zero = _zero_threshold(values)
    if magnitude.min() <= zero or (values.max() > 0 > values.min()):
        node = np.unravel_index(int(np.argmin(magnitude)), op.chart.shape)
        raise ZeroCrossing(tuple(int(i) for i in node), float(values[node]))
    if values.max() < 0:
        values = -values

    mask = op.chart.interior_mask
    lap_u = _laplacian(op, values)
    lap_sq = _laplacian(op, values**2)
    grad = op.fd.gradient(values)
    grad_sq = np.einsum("...ij,...i,...j->...", op.metric.inverse, grad, grad)
    identity = 0.5 * lap_sq - grad_sq - values * lap_u
    jacobi = lap_u + op.potential * values
    potential_error = _potential_error(op)
    peak = float(values.max())
    if tol is None:
        identity_tol = _terms_tolerance(op, 0.5 * lap_sq, grad_sq, values * lap_u)
        jacobi_tol = _terms_tolerance(op, lap_u) + potential_error * peak
        chain_tol = identity_tol + potential_error * peak**2
    else:
        identity_tol = jacobi_tol = chain_tol = tol
    max_jacobi = float(jacobi[mask].max())
    hypothesis = max_jacobi <= jacobi_tol

    inequality_residual = inequality_holds = None
    if hypothesis:
        chain = 0.5 * lap_sq - grad_sq + op.potential * values**2
        inequality_residual = float(chain[mask].max())
        inequality_holds = inequality_residual <= chain_tol
    max_lap_sq = float(lap_sq[mask].max())
    return SuperharmonicReport(
        min_abs_u=float(magnitude.min()),
        zero_threshold=zero,
        identity_residual=max_abs(identity, mask),
        max_jacobi=max_jacobi,
        jacobi_tolerance=jacobi_tol,
        hypothesis_holds=hypothesis,
        inequality_residual=inequality_residual,
        inequality_holds=inequality_holds,
        max_laplacian_sq=max_lap_sq,
        superharmonic=max_lap_sq <= identity_tol,
        ricci_nonnegative=not op.ricci_negative,
        tolerance=identity_tol,
        fields={"identity_residual": identity, "jacobi": jacobi},
    )


def rigidity_report(
    imm: Immersion, u, op: Optional[JacobiOperator] = None, tol: Optional[float] = None
) -> RigidityReport:
    """
    Conclusion pair phi = 0 and Ric-bar(N, N) = 0 for a constant zero-free u
    with Lu <= 0.

    For constant u, Lu = V u, so the hypothesis reduces to V = 0 and forces
    both conclusion quantities to vanish. The report asserts nothing when
    the hypothesis fails. Without an explicit tol, constancy is judged
    relative to TOL_FLOOR and the curvature quantities against their
    measured discretization error.
    """
    op = jacobi_operator(imm) if op is None else op
    values = _scalar(op, u)
    mask = op.chart.interior_mask
    oriented = values if values.max() > 0 else -values
    jacobi = jacobi_apply(op, oriented).data
    if tol is None:
        shape_tol = _potential_error(op)
        jacobi_tol = (
            _terms_tolerance(op, _laplacian(op, oriented)) + shape_tol * float(np.abs(values).max())
        )
        variation_tol = get_settings().TOL_FLOOR
    else:
        shape_tol = jacobi_tol = variation_tol = tol
    peak = max(float(np.abs(values).max()), 1e-300)
    variation = float((values.max() - values.min()) / peak)
    constant = variation <= variation_tol
    zero_free = float(np.abs(values).min()) > _zero_threshold(values) and not (
        values.max() > 0 > values.min()
    )
    hypothesis = constant and zero_free and float(jacobi[mask].max()) <= jacobi_tol

    max_phi = max_abs(op.data.phi_norm, mask)
    max_ricci = max_abs(op.normal_ricci, mask)
    totally_geodesic = max_phi <= shape_tol
    ricci_vanishes = max_ricci <= shape_tol
    conclusion = totally_geodesic and ricci_vanishes
    return RigidityReport(
        u_constant=constant,
        u_variation=variation,
        zero_free=zero_free,
        l1_norm=integrate(np.abs(values), op.metric),
        max_phi_norm=max_phi,
        max_normal_ricci=max_ricci,
        potential_max=float(op.potential[mask].max()),
        hypothesis_holds=hypothesis,
        totally_geodesic=totally_geodesic,
        ricci_vanishes=ricci_vanishes,
        conclusion_holds=conclusion,
        consistent=(not hypothesis) or conclusion,
        tolerance=shape_tol,
        notes=[L1_NOTE],
    )


def pairing_defect(op: JacobiOperator, u, v) -> float:
    """|<Lu, v> - <u, Lv>| in the L2 pairing of the induced metric."""
    a, b = _scalar(op, u), _scalar(op, v)
    lu, lv = jacobi_apply(op, a).data, jacobi_apply(op, b).data
    return abs(integrate(lu * b, op.metric) - integrate(a * lv, op.metric))
