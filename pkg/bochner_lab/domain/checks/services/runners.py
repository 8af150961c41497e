"""
Check runners: each evaluates one identity or theorem on a built catalog
entry and returns named residuals against tolerances.

A runner takes (entry, config) and returns a CheckOutcome. Logical
conditions are recorded as 0/1 residuals with zero tolerance so that every
verdict reduces to residual <= tolerance.
"""

import math
from typing import Any, Dict

import numpy as np

from bochner_lab.core.config import get_settings
from bochner_lab.core.exceptions import HypersurfaceOnly, InvalidParameters
from bochner_lab.domain.catalog.models.entry import CatalogEntry, EntryKind
from bochner_lab.domain.catalog.services.catalog_service import reference_check
from bochner_lab.domain.checks.models.check import CheckOutcome
from bochner_lab.domain.checks.schemas.run_config import RunConfig
from bochner_lab.domain.decomposition.schemas.reports import SCALING_NOTE
from bochner_lab.domain.decomposition.services.ahlfors import ahlfors_laplacian, delta_star
from bochner_lab.domain.decomposition.services.decomposition_service import (
    check_3_8_and_3_9,
    decomposition_report,
    solve_decomposition,
)
from bochner_lab.domain.geometry.models.fields import TensorField
from bochner_lab.domain.geometry.services.linalg import max_abs
from bochner_lab.domain.geometry.services.operators import inner_product, pointwise_norm
from bochner_lab.domain.geometry.services.tolerance import identity_tolerance
from bochner_lab.domain.maps.services.map_service import (
    check_hypotheses_2_3,
    eells_sampson_check,
    integral_q_check,
    is_harmonic,
    q_bound_check,
    q_eigenframe_identity,
    weitzenboeck_residual,
)
from bochner_lab.domain.stability.services.stability_service import (
    jacobi_operator,
    rigidity_report,
    stability_spectrum,
    superharmonic_check,
)
from bochner_lab.domain.submanifolds.services.submanifold_service import (
    classify,
    clifford_constants_check,
    cmc_lp_rigidity_check,
    codazzi_residual,
    gauss_consistency_check,
    gauss_curvature,
    pinching_check,
    principal_curvatures,
    second_fundamental_form,
    simons_residual,
)


def _dump(report, *exclude: str) -> Dict[str, Any]:
    return report.model_dump(exclude={"notes", *exclude})


def _wave_numbers(chart) -> np.ndarray:
    return np.array([2.0 * math.pi / (hi - lo) for lo, hi in chart.bounds])


# Maps


def weitzenboeck(entry: CatalogEntry, config: RunConfig) -> CheckOutcome:
    f = entry.instance
    report = weitzenboeck_residual(f)
    mask = f.domain.chart.interior_mask
    scale = max(
        1.0,
        max_abs(report.fields["laplacian_energy"], mask),
        max_abs(report.fields["hessian_norm_sq"], mask),
        max_abs(report.fields["q"], mask),
    )
    tol = config.tol or identity_tolerance(f.domain.chart, f.order, scale=scale)
    out = CheckOutcome(details=_dump(report), notes=list(report.notes), decay="max_abs")
    out.add("max_abs", report.max_abs, tol)
    out.informational = report.informational
    if report.informational:
        out.notes.append("input is not harmonic; residual reported without a verdict")
    return out


def harmonic(entry: CatalogEntry, config: RunConfig) -> CheckOutcome:
    report = is_harmonic(entry.instance, config.tol)
    out = CheckOutcome(decay="max_tension")
    out.add("max_tension", report.max_tension, report.tolerance)
    return out


def q_eigenframe(entry: CatalogEntry, config: RunConfig) -> CheckOutcome:
    report = q_eigenframe_identity(entry.instance)
    out = CheckOutcome(details={"scale": report.scale})
    out.add("max_residual", report.max_residual, config.tol or 1e-10 * max(1.0, report.scale))
    return out


def q_bound(entry: CatalogEntry, config: RunConfig) -> CheckOutcome:
    report = q_bound_check(entry.instance, config.tol, config.seed)
    out = CheckOutcome(details=_dump(report))
    out.flag("q_above_bound", report.holds)
    if report.certified_nodes == 0:
        out.informational = True
        out.notes.append("no certified nodes; codomain curvature extremes are sampled")
    return out


def hypotheses_2_3(entry: CatalogEntry, config: RunConfig) -> CheckOutcome:
    report = check_hypotheses_2_3(entry.instance, config.strict, config.tol, config.seed)
    chosen = report.trace if config.strict else report.half_trace
    out = CheckOutcome(details=_dump(report), notes=list(report.notes))
    out.add("failing_nodes", chosen.failing_nodes, 0.0)
    return out


def eells_sampson(entry: CatalogEntry, config: RunConfig) -> CheckOutcome:
    report = eells_sampson_check(entry.instance, config.tol, config.seed)
    tol = config.tol or get_settings().TOL_FLOOR
    out = CheckOutcome(details=_dump(report))
    out.add("q_violation", max(0.0, -report.min_q), tol)
    if not report.hypotheses_hold:
        out.informational = True
        out.notes.append("Ric >= 0 / sec <= 0 hypotheses fail; Q >= 0 is not asserted")
    return out


def integral_q(entry: CatalogEntry, config: RunConfig) -> CheckOutcome:
    report = integral_q_check(entry.instance, config.tol, allow_margin=True)
    out = CheckOutcome(details=_dump(report), notes=list(report.notes))
    out.add("integral_sum", abs(report.integral_sum), report.tolerance)
    out.add("integral_q_positive", max(0.0, report.integral_q), report.tolerance)
    out.informational = not report.harmonic
    return out


# Immersions


def simons(entry: CatalogEntry, config: RunConfig) -> CheckOutcome:
    imm = entry.instance
    data = second_fundamental_form(imm)
    report = simons_residual(data, imm, config.tol)
    details = _dump(report)
    details["max_phi_norm_sq"] = max_abs(data.phi_norm_sq, imm.chart.interior_mask)
    out = CheckOutcome(details=details, decay="residual")
    if imm.codimension == 1:
        out.add("residual", report.max_abs, report.tolerance)
    else:
        out.add("residual", max(0.0, -report.min_residual), report.tolerance)
        out.notes.append("codimension >= 2: Simons form is an inequality, r >= -tol checked")
    out.informational = not report.minimal
    return out


def codazzi(entry: CatalogEntry, config: RunConfig) -> CheckOutcome:
    imm = entry.instance
    report = codazzi_residual(second_fundamental_form(imm), imm, config.tol)
    out = CheckOutcome(details=_dump(report), decay="codazzi_max")
    out.add("codazzi_max", report.codazzi_max, report.tolerance)
    if report.divergence_max is not None:
        out.add("divergence_max", report.divergence_max, report.tolerance)
        out.add("traceless_divergence_max", report.traceless_divergence_max, report.tolerance)
        out.decay = "divergence_max"
    return out


def pinching(entry: CatalogEntry, config: RunConfig) -> CheckOutcome:
    imm = entry.instance
    report = pinching_check(second_fundamental_form(imm), imm, config.tol)
    out = CheckOutcome(details=_dump(report))
    out.add("pinching_excess", max(0.0, report.max_norm_sq - report.bound), report.tolerance)
    if not report.minimal:
        out.informational = True
        out.notes.append("input is not minimal; the pinching bound is not asserted")
    return out


def gauss(entry: CatalogEntry, config: RunConfig) -> CheckOutcome:
    report = gauss_consistency_check(entry.instance, tol=config.tol)
    out = CheckOutcome(decay="christoffel_max")
    out.add("christoffel_max", report.christoffel_max, report.tolerance)
    out.add("riemann_max", report.riemann_max, report.tolerance)
    return out


def classification(entry: CatalogEntry, config: RunConfig) -> CheckOutcome:
    report = classify(second_fundamental_form(entry.instance), config.tol)
    details = _dump(report)
    details["labels"] = report.labels
    return CheckOutcome(details=details, informational=True)


def clifford_constants(entry: CatalogEntry, config: RunConfig) -> CheckOutcome:
    if entry.name != "clifford_torus":
        raise InvalidParameters("clifford_constants applies to clifford_torus only")
    imm = entry.instance
    n1, n2 = entry.params["n1"], entry.params["n2"]
    principal = principal_curvatures(second_fundamental_form(imm))
    tol = config.tol or 1e-4
    report = clifford_constants_check(n1, n2, principal[imm.chart.interior_mask], tol)
    exact = 1e-12 * (n1 + n2)
    out = CheckOutcome(details=_dump(report), notes=list(report.notes), decay="numeric_deviation")
    out.add("trace_identity", abs(report.trace_identity), exact)
    out.add("square_identity", abs(report.square_identity), exact)
    out.add("numeric_deviation", report.numeric_deviation, tol)
    return out


def cmc_lp_rigidity(entry: CatalogEntry, config: RunConfig) -> CheckOutcome:
    report = cmc_lp_rigidity_check(entry.instance, config.p, tol=config.tol)
    out = CheckOutcome(details=_dump(report), notes=list(report.notes))
    out.flag("conclusion", report.consistent)
    out.informational = not report.hypotheses_hold
    return out


def integral_3_9(entry: CatalogEntry, config: RunConfig) -> CheckOutcome:
    report = check_3_8_and_3_9(entry.instance, solver_cfg=config.solver, tol=config.tol)
    out = CheckOutcome(details=_dump(report), notes=list(report.notes), decay="divergence_residual")
    out.add("divergence_residual", report.divergence_residual_max, report.divergence_tolerance)
    out.add("integral_difference", abs(report.difference), report.integral_tolerance)
    out.flag("branch_consistent", report.branch_consistent)
    return out


def stability(entry: CatalogEntry, config: RunConfig) -> CheckOutcome:
    op = jacobi_operator(entry.instance)
    report = stability_spectrum(op, config.num_modes, config.tol, config.seed)
    out = CheckOutcome(details=_dump(report))
    out.add("lambda_max_positive", max(0.0, report.lambda_max), report.tolerance)
    out.flag("spectrum_consistent", report.consistent)
    if not report.minimal:
        out.notes.append("input is not minimal; L is the second variation of area only at minimal input")
    return out


def _positive_test_function(chart, seed: int) -> np.ndarray:
    """1 + dim + sum of random unit-amplitude first harmonics, positive everywhere."""
    rng = np.random.default_rng(seed)
    mesh = chart.mesh
    values = np.full(chart.shape, 1.0 + chart.dim)
    for axis, k in enumerate(_wave_numbers(chart)):
        c, d = rng.uniform(-0.5, 0.5, size=2)
        values += c * np.sin(k * mesh[..., axis]) + d * np.cos(k * mesh[..., axis])
    return values


def superharmonic(entry: CatalogEntry, config: RunConfig) -> CheckOutcome:
    imm = entry.instance
    op = jacobi_operator(imm)
    u = _positive_test_function(imm.chart, config.seed)
    report = superharmonic_check(op, u, config.tol)
    out = CheckOutcome(details=_dump(report), decay="identity_residual")
    out.add("identity_residual", report.identity_residual, report.tolerance)
    if report.inequality_holds is not None:
        out.flag("inequality", report.inequality_holds)
    return out


def rigidity(entry: CatalogEntry, config: RunConfig) -> CheckOutcome:
    imm = entry.instance
    report = rigidity_report(imm, np.ones(imm.chart.shape), tol=config.tol)
    out = CheckOutcome(details=_dump(report), notes=list(report.notes))
    out.flag("conclusion", report.consistent)
    out.informational = not report.hypothesis_holds
    return out


# Decomposition


def _constructed_input(entry: CatalogEntry):
    """phi = delta* theta0 + g with theta0 = sin(k x1) dx1 + cos(k x2) dx2."""
    manifold = entry.instance
    chart = manifold.chart
    mesh = chart.mesh
    k = _wave_numbers(chart)
    theta0 = np.zeros(chart.shape + (chart.dim,))
    theta0[..., 0] = np.sin(k[0] * mesh[..., 0])
    if chart.dim >= 2:
        theta0[..., 1] = np.cos(k[1] * mesh[..., 1])
    theta = TensorField.one_form(chart, theta0)
    metric, curv = manifold.metric, manifold.curvature
    phi = delta_star(theta, metric, curv, entry.order) + metric.as_tensor()
    return phi, metric, curv


def _hypersurface_input(entry: CatalogEntry):
    imm = entry.instance
    if imm.codimension != 1:
        raise HypersurfaceOnly(imm.codimension)
    data = second_fundamental_form(imm)
    curv = gauss_curvature(imm, data)
    return TensorField.sym2(imm.chart, data.phi[..., 0]), data.metric, curv


def decomposition(entry: CatalogEntry, config: RunConfig) -> CheckOutcome:
    if entry.kind is EntryKind.MANIFOLD:
        phi, metric, curv = _constructed_input(entry)
    else:
        phi, metric, curv = _hypersurface_input(entry)
    result = solve_decomposition(phi, metric, config.solver, curv, entry.order)
    report = decomposition_report(phi, result, metric, curv, entry.order, config.tol)
    stats = result.solver_stats
    phi_l2 = math.sqrt(max(inner_product(phi, phi, metric), 0.0))

    details = _dump(report)
    details["solver"] = stats.model_dump()
    out = CheckOutcome(details=details, notes=[SCALING_NOTE])
    out.add("trace_max", report.trace_max, 1e-8 * max(1.0, phi_l2))
    out.add("weak_divergence", report.weak_divergence, max(10.0 * stats.final_residual, 1e-10))
    out.add("reconstruction_l2", report.reconstruction_l2, report.tolerance)
    out.add("orthogonality", report.orthogonality, report.tolerance)
    if entry.kind is EntryKind.MANIFOLD:
        lam = result.lambda_field.data
        out.add("lambda_error", max_abs(lam - 1.0), config.tol or identity_tolerance(metric.chart, entry.order))
        out.add("tt_l2", report.tt_l2, report.tolerance)
    return out


def ahlfors_eigenform(entry: CatalogEntry, config: RunConfig) -> CheckOutcome:
    """S*S(sin(k x) dx) = 4 k^2 (1 - 1/n) sin(k x) dx on a flat torus."""
    if entry.name != "flat_torus":
        raise InvalidParameters("ahlfors_eigenform applies to flat_torus only")
    manifold = entry.instance
    chart = manifold.chart
    k = _wave_numbers(chart)[0]
    data = np.zeros(chart.shape + (chart.dim,))
    data[..., 0] = np.sin(k * chart.mesh[..., 0])
    theta = TensorField.one_form(chart, data)
    eigenvalue = 4.0 * k**2 * (1.0 - 1.0 / chart.dim)
    image = ahlfors_laplacian(theta, manifold.metric, manifold.curvature, entry.order)
    residual = max_abs(pointwise_norm(image - theta.scaled(eigenvalue), manifold.metric))
    tol = config.tol or identity_tolerance(chart, entry.order, scale=max(1.0, eigenvalue))
    out = CheckOutcome(details={"eigenvalue": eigenvalue}, decay="eigenform")
    out.add("eigenform", residual, tol)
    return out


# Any kind


def reference(entry: CatalogEntry, config: RunConfig) -> CheckOutcome:
    report = reference_check(entry)
    out = CheckOutcome(details={"provenance": {row.quantity: row.provenance for row in report.rows}})
    for row in report.rows:
        out.add(row.quantity, row.deviation, config.tol or row.tolerance)
    return out
