"""
Energy, map Hessian and Bochner-formula analysis of smooth maps.

Index conventions: df[..., i, a] = d_i f^a, Ddf[..., i, j, a]. Codomain
quantities are evaluated at the image points f(x).
"""

import logging
from typing import Optional, Tuple

import numpy as np

from bochner_lab.core.config import get_settings
from bochner_lab.core.exceptions import NotClosedManifold
from bochner_lab.domain.geometry.models.fields import TensorField
from bochner_lab.domain.geometry.models.connection import levi_civita_from_jet
from bochner_lab.domain.geometry.services.curvature import (
    curvature_extremes_field,
    model_extremes,
    sectional_minimum,
)
from bochner_lab.domain.geometry.services.finite_difference import FiniteDifference
from bochner_lab.domain.geometry.services.linalg import generalized_eigh, max_abs
from bochner_lab.domain.geometry.services.operators import integrate, laplacian_array
from bochner_lab.domain.geometry.services.tolerance import identity_tolerance
from bochner_lab.domain.maps.models.smooth_map import PhiTensor, SmoothMap
from bochner_lab.domain.maps.schemas.reports import (
    EellsSampsonReport,
    EnergyReport,
    HarmonicityReport,
    HypothesisReport,
    HypothesisVariant,
    IntegralQReport,
    QBoundReport,
    QEigenframeReport,
    WeitzenboeckReport,
)

logger = logging.getLogger(__name__)

ENERGY_NOTE = (
    "e(f) = 1/2 trace_g(f*h); trace-sensitive statements also report trace_g(f*h)"
)


def pullback_metric(f: SmoothMap) -> TensorField:
    """(f*h)_kl = f_k^a f_l^b h_ab."""
    df = f.differential
    pulled = np.einsum("...ka,...lb,...ab->...kl", df, df, f.image_metric)
    return TensorField.sym2(f.domain.chart, pulled)


def trace_energy(f: SmoothMap) -> np.ndarray:
    """trace_g(f*h) at every node."""
    return np.einsum("...kl,...kl->...", f.domain.metric.inverse, pullback_metric(f).data)


def energy_density(f: SmoothMap) -> TensorField:
    """e(f) = 1/2 trace_g(f*h)."""
    return TensorField.scalar(f.domain.chart, 0.5 * trace_energy(f))


def dirichlet_energy(f: SmoothMap) -> EnergyReport:
    """
    Integral of the energy density in both normalizations.

    Args:
        f: Smooth map

    Returns:
        EnergyReport with the integral of e, half of it, and the trace form
    """
    density = energy_density(f)
    integral = integrate(density, f.domain.metric)
    notes = [ENERGY_NOTE]
    if not f.domain.chart.is_closed:
        notes.append("integral over a chart with pole caps removed")
    return EnergyReport(
        integral_e=integral,
        half_integral_e=0.5 * integral,
        integral_trace=2.0 * integral,
        finite=bool(np.isfinite(integral)),
        notes=notes,
        fields={"energy_density": density.data},
    )


def _second_derivatives(f: SmoothMap) -> np.ndarray:
    if f.second_derivatives is not None:
        return f.second_derivatives
    fd = FiniteDifference(f.domain.chart, f.order)
    return fd.hessian(f.components, f.codomain.period)


def map_hessian(f: SmoothMap) -> np.ndarray:
    """
    (Ddf)_ij^a = d_i d_j f^a - Gamma^k_ij f_k^a + Gamma-bar^a_bc f_i^b f_j^c.

    Raises:
        StencilOutOfDomain: if finite differences do not fit the chart margins
    """
    df = f.differential
    ddf = _second_derivatives(f)
    gamma = f.domain.curvature.christoffel
    hess = ddf - np.einsum("...kij,...ka->...ija", gamma, df)
    hess += np.einsum("...abc,...ib,...jc->...ija", f.image_christoffel, df, df)
    return 0.5 * (hess + np.swapaxes(hess, -2, -3))


def tension_field(f: SmoothMap, hessian: Optional[np.ndarray] = None) -> np.ndarray:
    """tau^a = g^ij (Ddf)_ij^a."""
    hessian = map_hessian(f) if hessian is None else hessian
    return np.einsum("...ij,...ija->...a", f.domain.metric.inverse, hessian)


def tension_norm(f: SmoothMap, hessian: Optional[np.ndarray] = None) -> np.ndarray:
    tau = tension_field(f, hessian)
    return np.sqrt(np.maximum(np.einsum("...a,...ab,...b->...", tau, f.image_metric, tau), 0.0))


def _tension_tolerance(f: SmoothMap) -> float:
    scale = max(1.0, float(np.max(energy_density(f).data)))
    return identity_tolerance(f.domain.chart, f.order, scale=scale)


def is_harmonic(f: SmoothMap, tol: Optional[float] = None) -> HarmonicityReport:
    """Harmonic iff the max tension norm over non-margin nodes is within tol."""
    tol = _tension_tolerance(f) if tol is None else tol
    norm = tension_norm(f)
    worst = max_abs(norm, f.domain.chart.interior_mask)
    return HarmonicityReport(
        harmonic=worst <= tol,
        max_tension=worst,
        tolerance=tol,
        fields={"tension_norm": norm},
    )


def hessian_norm_sq(f: SmoothMap, hessian: Optional[np.ndarray] = None) -> np.ndarray:
    """|Ddf|^2 with g on both tangent slots and h on the value slot."""
    hessian = map_hessian(f) if hessian is None else hessian
    g_inv = f.domain.metric.inverse
    return np.einsum(
        "...ik,...jl,...ab,...ija,...klb->...", g_inv, g_inv, f.image_metric, hessian, hessian
    )


def _phi(f: SmoothMap) -> np.ndarray:
    df = f.differential
    return np.einsum("...ka,...lb,...kl->...ab", df, df, f.domain.metric.inverse)


def phi_tensor(f: SmoothMap) -> PhiTensor:
    """
    Phi with its eigenvalues relative to h, i.e. the spectrum of Phi h.

    Eigenvalues come from the symmetric generalized problem (h Phi h, h) and
    are sorted in descending order.
    """
    phi = _phi(f)
    h = f.image_metric
    values, vectors = generalized_eigh(h @ phi @ h, h)
    return PhiTensor(
        phi=phi,
        eigenvalues=values[..., ::-1].copy(),
        eigenvectors=vectors[..., ::-1].copy(),
    )


def q_term(f: SmoothMap) -> TensorField:
    """
    Q(f) = -Phi^ac Phi^bd R-bar_abcd + g^ik g^jl (f*h)_kl Ric_ij.
    """
    phi = _phi(f)
    codomain_part = -np.einsum("...ac,...bd,...abcd->...", phi, phi, f.image_riemann)
    g_inv = f.domain.metric.inverse
    domain_part = np.einsum(
        "...ik,...jl,...kl,...ij->...", g_inv, g_inv, pullback_metric(f).data, f.domain.curvature.ricci
    )
    return TensorField.scalar(f.domain.chart, codomain_part + domain_part)


def q_eigenframe_identity(f: SmoothMap) -> QEigenframeReport:
    """
    Compare Ric-bar_ab h_ce Phi^ac Phi^be - R-bar_abce Phi^ac Phi^be with
    sum over a < b of sec-bar(e_a, e_b) (lambda_a - lambda_b)^2 in the
    h-orthonormal eigenframe of Phi.
    """
    phi = phi_tensor(f)
    h, riemann = f.image_metric, f.image_riemann
    lhs = np.einsum("...ab,...ce,...ac,...be->...", f.image_ricci, h, phi.phi, phi.phi)
    lhs -= np.einsum("...abce,...ac,...be->...", riemann, phi.phi, phi.phi)
    frame = phi.eigenvectors
    r_frame = np.einsum(
        "...abcd,...ai,...bj,...ck,...dl->...ijkl", riemann, frame, frame, frame, frame, optimize=True
    )
    m = f.target_dim
    rhs = np.zeros(lhs.shape)
    lam = phi.eigenvalues
    for a in range(m):
        for b in range(a + 1, m):
            rhs += r_frame[..., a, b, a, b] * (lam[..., a] - lam[..., b]) ** 2
    residual = lhs - rhs
    mask = f.domain.chart.interior_mask
    return QEigenframeReport(
        max_residual=max_abs(residual, mask),
        scale=max(max_abs(lhs, mask), max_abs(rhs, mask)),
        fields={"lhs": lhs, "rhs": rhs},
    )


def weitzenboeck_residual(f: SmoothMap, tol: Optional[float] = None) -> WeitzenboeckReport:
    """
    r = Delta e(f) - |Ddf|^2 - Q(f) over non-margin nodes.

    The identity is asserted for harmonic maps only; otherwise the report is
    informational.
    """
    hessian = map_hessian(f)
    energy = energy_density(f)
    fd = FiniteDifference(f.domain.chart, f.order)
    lap = laplacian_array(energy.data, f.domain.metric, f.domain.curvature.christoffel, fd)
    hess_sq = hessian_norm_sq(f, hessian)
    q = q_term(f).data
    residual = lap - hess_sq - q

    tol = _tension_tolerance(f) if tol is None else tol
    mask = f.domain.chart.interior_mask
    worst_tension = max_abs(tension_norm(f, hessian), mask)
    harmonic = worst_tension <= tol
    if not harmonic:
        logger.warning(
            "%s is not harmonic within %.3e (max tension %.3e); residual is informational",
            f.name,
            tol,
            worst_tension,
        )
    l2 = float(np.sqrt(max(integrate(np.where(mask, residual**2, 0.0), f.domain.metric), 0.0)))
    return WeitzenboeckReport(
        max_abs=max_abs(residual, mask),
        l2=l2,
        max_tension=worst_tension,
        harmonic=harmonic,
        informational=not harmonic,
        notes=[ENERGY_NOTE],
        fields={
            "residual": residual,
            "laplacian_energy": lap,
            "hessian_norm_sq": hess_sq,
            "q": q,
        },
    )


def _extremes(f: SmoothMap, seed: Optional[int] = None) -> Tuple[np.ndarray, ...]:
    ric_min, _ = curvature_extremes_field(f.domain.curvature, f.domain.metric, "ric_min")
    image_ric_min, image_ric_max, image_sec_min, certified = model_extremes(
        f.codomain.model, f.components, seed=seed
    )
    if not certified:
        logger.warning("Codomain curvature extremes of %s are sampled, not certified", f.name)
    return ric_min, image_ric_min, image_ric_max, image_sec_min, certified


def q_lower_bound(f: SmoothMap, seed: Optional[int] = None) -> TensorField:
    """
    B = (sum l^2)(m sec_min - Ric-bar_max) + (sum l)(Ric_min - sec_min sum l).
    """
    phi = phi_tensor(f)
    ric_min, _, image_ric_max, sec_min, _ = _extremes(f, seed)
    return TensorField.scalar(f.domain.chart, _bound(phi, ric_min, image_ric_max, sec_min, f.target_dim))


def _bound(phi: PhiTensor, ric_min, image_ric_max, sec_min, m: int) -> np.ndarray:
    total, total_sq = phi.trace, phi.trace_sq
    return total_sq * (m * sec_min - image_ric_max) + total * (ric_min - sec_min * total)


def q_bound_check(f: SmoothMap, tol: Optional[float] = None, seed: Optional[int] = None) -> QBoundReport:
    """Q(f) >= B at every certified node."""
    phi = phi_tensor(f)
    ric_min, _, image_ric_max, sec_min, certified = _extremes(f, seed)
    bound = _bound(phi, ric_min, image_ric_max, sec_min, f.target_dim)
    q = q_term(f).data
    mask = f.domain.chart.interior_mask
    scale = max(1.0, max_abs(q, mask), max_abs(bound, mask))
    tol = 1e-10 * scale if tol is None else tol
    gap = q - bound
    certified_mask = mask if certified else np.zeros_like(mask)
    min_gap = float(gap[certified_mask].min()) if certified_mask.any() else 0.0
    return QBoundReport(
        min_gap=min_gap,
        holds=min_gap >= -tol,
        certified_nodes=int(certified_mask.sum()),
        uncertified_nodes=int(mask.sum() - certified_mask.sum()),
        equality_max=max_abs(gap, certified_mask) if certified_mask.any() else 0.0,
        fields={"q": q, "bound": bound},
    )


def _variant(name, energy, ric_min, sec_min, image_ric_max, m, strict, tol, mask) -> HypothesisVariant:
    energy_margin = ric_min - sec_min * energy
    curvature_margin = sec_min - image_ric_max / m
    energy_ok = energy_margin >= -tol
    curvature_ok = curvature_margin > tol if strict else curvature_margin >= -tol
    node_ok = energy_ok & curvature_ok
    return HypothesisVariant(
        normalization=name,
        energy_condition=bool(energy_ok[mask].all()),
        curvature_condition=bool(curvature_ok[mask].all()),
        passes=bool(node_ok[mask].all()),
        failing_nodes=int((~node_ok & mask).sum()),
        worst_energy_margin=float(energy_margin[mask].min()),
        worst_curvature_margin=float(curvature_margin[mask].min()),
    )


def check_hypotheses_2_3(
    f: SmoothMap, strict: bool = False, tol: Optional[float] = None, seed: Optional[int] = None
) -> HypothesisReport:
    """
    Curvature hypotheses sec_min e(f) <= Ric_min and sec_min >= Ric-bar_max / m.

    Both energy normalizations are evaluated. The verdict uses the
    half-trace density in non-strict mode; strict mode uses the trace density
    with a strict curvature inequality, the form under which Q >= B >= 0.
    """
    tol = get_settings().TOL_FLOOR if tol is None else tol
    mask = f.domain.chart.interior_mask
    ric_min, image_ric_min, image_ric_max, sec_min, certified = _extremes(f, seed)
    half = 0.5 * trace_energy(f)
    trace = 2.0 * half
    m = f.target_dim
    half_variant = _variant("half_trace", half, ric_min, sec_min, image_ric_max, m, strict, tol, mask)
    trace_variant = _variant("trace", trace, ric_min, sec_min, image_ric_max, m, strict, tol, mask)
    chosen = trace_variant if strict else half_variant

    double = bool(
        np.all(image_ric_min[mask] >= (m - 1) * sec_min[mask] - tol)
        and np.all(image_ric_max[mask] <= m * sec_min[mask] + tol)
    )
    scaled = half * image_ric_max / m
    ricci_energy = bool(np.all(ric_min[mask] >= scaled[mask] - tol) and np.all(scaled[mask] >= -tol))
    notes = [ENERGY_NOTE]
    if not certified:
        notes.append("codomain sec_min sampled; verdict not certified")
    return HypothesisReport(
        strict=strict,
        passes=chosen.passes,
        energy_normalization=chosen.normalization,
        half_trace=half_variant,
        trace=trace_variant,
        double_inequality=double,
        ricci_energy_bound=ricci_energy,
        certified=certified,
        tolerance=tol,
        notes=notes,
        fields={"ric_min": ric_min, "image_sec_min": sec_min, "image_ric_max": image_ric_max},
    )


def _image_sectional_maximum(f: SmoothMap, seed: Optional[int]) -> Tuple[np.ndarray, bool]:
    model = f.codomain.model
    batch = f.components.shape[:-1]
    if model.constant_curvature is not None:
        return np.full(batch, model.constant_curvature if model.dim >= 2 else 0.0), True
    g, dg, ddg = model.jet(f.components)
    _, riemann, ricci, _ = levi_civita_from_jet(g, np.linalg.inv(g), dg, ddg)
    return -sectional_minimum(-riemann, g, -ricci, seed=seed), False


def eells_sampson_check(
    f: SmoothMap, tol: Optional[float] = None, seed: Optional[int] = None
) -> EellsSampsonReport:
    """Ric >= 0 on the domain and sec <= 0 on the image imply Q >= 0."""
    tol = get_settings().TOL_FLOOR if tol is None else tol
    mask = f.domain.chart.interior_mask
    ric_min, _ = curvature_extremes_field(f.domain.curvature, f.domain.metric, "ric_min")
    sec_max, certified = _image_sectional_maximum(f, seed)
    q = q_term(f).data
    hypotheses = bool(np.all(ric_min[mask] >= -tol) and np.all(sec_max[mask] <= tol))
    min_q = float(q[mask].min())
    return EellsSampsonReport(
        hypotheses_hold=hypotheses,
        min_ricci=float(ric_min[mask].min()),
        max_image_sectional=float(sec_max[mask].max()),
        min_q=min_q,
        conclusion_holds=min_q >= -tol,
        certified=certified,
        fields={"q": q},
    )


def integral_q_check(
    f: SmoothMap, tol: Optional[float] = None, allow_margin: bool = False
) -> IntegralQReport:
    """
    Integral of Q(f) and of |Ddf|^2 + Q(f) for harmonic f on a closed domain.

    Args:
        f: Smooth map
        tol: Quadrature tolerance
        allow_margin: Accept charts closed up to margin-handled pole caps

    Raises:
        NotClosedManifold: if the domain chart is not closed
    """
    chart = f.domain.chart
    if not chart.is_closed:
        margin_handled = all(
            per or chart.margin[a] > 0 for a, per in enumerate(chart.periodic)
        )
        if not (allow_margin and margin_handled):
            raise NotClosedManifold()
    hessian = map_hessian(f)
    q = q_term(f).data
    hess_sq = hessian_norm_sq(f, hessian)
    metric = f.domain.metric
    integral_q = integrate(q, metric)
    integral_hess = integrate(hess_sq, metric)
    volume = integrate(np.ones(chart.shape), metric)
    tol = identity_tolerance(chart, f.order, scale=volume) if tol is None else tol
    harmonic_tol = _tension_tolerance(f)
    worst_tension = max_abs(tension_norm(f, hessian), chart.interior_mask)
    harmonic = worst_tension <= harmonic_tol
    integral_sum = integral_hess + integral_q
    notes = [ENERGY_NOTE]
    approximate = not chart.is_closed
    if approximate:
        notes.append("sphere chart: integrals omit the pole caps cut from the chart")
    return IntegralQReport(
        integral_q=integral_q,
        integral_hessian_sq=integral_hess,
        integral_sum=integral_sum,
        tolerance=tol,
        max_tension=worst_tension,
        harmonic=harmonic,
        verdict=bool(harmonic and integral_q <= tol and abs(integral_sum) <= tol),
        approximate=approximate,
        notes=notes,
        fields={"q": q, "hessian_norm_sq": hess_sq},
    )
