"""
Differential operators and integration on a metric chart.

Sign conventions: the Laplacian is the trace of the Hessian (non-positive
spectrum) and (delta T)_j = -g^ik nabla_i T_kj.
"""

from typing import Optional, Union

import numpy as np

from bochner_lab.core.config import get_settings
from bochner_lab.core.exceptions import InvalidExponent, ValidationError
from bochner_lab.domain.geometry.models.connection import christoffel_from_jet
from bochner_lab.domain.geometry.models.fields import (
    CurvatureBundle,
    FieldRole,
    MetricField,
    TensorField,
)
from bochner_lab.domain.geometry.services.finite_difference import FiniteDifference
from bochner_lab.domain.geometry.services.linalg import deterministic_sum

ArrayOrField = Union[np.ndarray, TensorField]


def resolve_order(order: Optional[int] = None, curv: Optional[CurvatureBundle] = None) -> int:
    if order:
        return order
    if curv is not None and curv.order:
        return curv.order
    return get_settings().FD_ORDER


def connection(metric: MetricField, order: Optional[int] = None) -> np.ndarray:
    """
    Christoffel symbols of a metric without curvature.

    Closed-form when the metric has an evaluator, finite differences otherwise.
    """
    if metric.evaluator is not None:
        return metric.evaluator.christoffel(metric.chart.mesh)
    fd = FiniteDifference(metric.chart, resolve_order(order))
    return christoffel_from_jet(metric.inverse, fd.gradient(metric.components))


def _christoffel(metric, curv, order) -> np.ndarray:
    return curv.christoffel if curv is not None else connection(metric, order)


def _data(f: ArrayOrField) -> np.ndarray:
    return f.data if isinstance(f, TensorField) else np.asarray(f, dtype=float)


def _require(field: TensorField, role: FieldRole) -> None:
    if field.role is not role:
        raise ValidationError(f"expected a {role.value} field, got {field.role.value}")


def laplacian_array(
    values: np.ndarray,
    metric: MetricField,
    christoffel: np.ndarray,
    fd: FiniteDifference,
) -> np.ndarray:
    """g^ij (d_i d_j f - Gamma^k_ij d_k f) for grid values with optional components."""
    dim = metric.dim
    grad = fd.gradient(values)
    hess = fd.hessian(values)
    contracted = np.einsum("...ij,...kij->...k", metric.inverse, christoffel)
    extra = values.ndim - dim
    letters = "abcdefgh"[:extra]
    lap = np.einsum(f"...ij,...ij{letters}->...{letters}", metric.inverse, hess)
    lap -= np.einsum(f"...k,...k{letters}->...{letters}", contracted, grad)
    return lap


def laplace_beltrami(
    f: TensorField,
    metric: MetricField,
    curv: Optional[CurvatureBundle] = None,
    order: Optional[int] = None,
) -> TensorField:
    """
    Laplace-Beltrami operator of a scalar field.

    Args:
        f: Scalar field on the metric's chart
        metric: Metric field
        curv: Curvature bundle supplying Christoffel symbols (computed if omitted)
        order: Finite-difference order

    Returns:
        Delta f as a scalar field

    Raises:
        StencilOutOfDomain: if the stencil does not fit a non-periodic margin
    """
    _require(f, FieldRole.SCALAR)
    fd = FiniteDifference(metric.chart, resolve_order(order, curv))
    lap = laplacian_array(f.data, metric, _christoffel(metric, curv, order), fd)
    return TensorField.scalar(metric.chart, lap)


def differential(f: TensorField, order: Optional[int] = None) -> TensorField:
    """df as a one-form."""
    _require(f, FieldRole.SCALAR)
    fd = FiniteDifference(f.chart, resolve_order(order))
    return TensorField.one_form(f.chart, fd.gradient(f.data))


def covariant_derivative(
    tensor: TensorField,
    metric: MetricField,
    curv: Optional[CurvatureBundle] = None,
    order: Optional[int] = None,
) -> np.ndarray:
    """
    Covariant derivative of a covariant field; the derivative slot comes first.

    Returns:
        one-form: [..., i, j] = nabla_i T_j; sym2: [..., i, j, k] = nabla_i T_jk
    """
    fd = FiniteDifference(metric.chart, resolve_order(order, curv))
    gamma = _christoffel(metric, curv, order)
    partial = fd.gradient(tensor.data)
    if tensor.role is FieldRole.ONE_FORM:
        return partial - np.einsum("...kij,...k->...ij", gamma, tensor.data)
    if tensor.role is FieldRole.SYM2:
        term = np.einsum("...lij,...lk->...ijk", gamma, tensor.data)
        return partial - term - np.swapaxes(term, -1, -2)
    raise ValidationError(f"covariant derivative of a {tensor.role.value} field")


def divergence_sym2(
    tensor: TensorField,
    metric: MetricField,
    curv: Optional[CurvatureBundle] = None,
    order: Optional[int] = None,
) -> TensorField:
    """(delta T)_j = -g^ik nabla_i T_kj."""
    _require(tensor, FieldRole.SYM2)
    nabla = covariant_derivative(tensor, metric, curv, order)
    return TensorField.one_form(
        metric.chart, -np.einsum("...ik,...ikj->...j", metric.inverse, nabla)
    )


def lower(vector: TensorField, metric: MetricField) -> TensorField:
    _require(vector, FieldRole.VECTOR)
    return TensorField.one_form(
        metric.chart, np.einsum("...jk,...k->...j", metric.components, vector.data)
    )


def raise_index(form: TensorField, metric: MetricField) -> TensorField:
    _require(form, FieldRole.ONE_FORM)
    return TensorField.vector(
        metric.chart, np.einsum("...jk,...k->...j", metric.inverse, form.data)
    )


def lie_derivative_metric(
    xi: TensorField,
    metric: MetricField,
    curv: Optional[CurvatureBundle] = None,
    order: Optional[int] = None,
) -> TensorField:
    """(L_xi g)_ij = nabla_i xi_j + nabla_j xi_i with xi_j = g_jk xi^k."""
    nabla = covariant_derivative(lower(xi, metric), metric, curv, order)
    return TensorField.sym2(metric.chart, nabla + np.swapaxes(nabla, -1, -2))


def trace_g(tensor: TensorField, metric: MetricField) -> np.ndarray:
    _require(tensor, FieldRole.SYM2)
    return np.einsum("...ij,...ij->...", metric.inverse, tensor.data)


def pointwise_inner(s: TensorField, t: TensorField, metric: MetricField) -> np.ndarray:
    """Full metric contraction of two fields of the same role at every node."""
    if s.role is not t.role:
        raise ValidationError("inner product of fields with different roles")
    if s.role is FieldRole.SCALAR:
        return s.data * t.data
    if s.role is FieldRole.ONE_FORM:
        return np.einsum("...ij,...i,...j->...", metric.inverse, s.data, t.data)
    if s.role is FieldRole.VECTOR:
        return np.einsum("...ij,...i,...j->...", metric.components, s.data, t.data)
    return np.einsum(
        "...ik,...jl,...ij,...kl->...", metric.inverse, metric.inverse, s.data, t.data
    )


def pointwise_norm(tensor: TensorField, metric: MetricField) -> np.ndarray:
    return np.sqrt(np.maximum(pointwise_inner(tensor, tensor, metric), 0.0))


def integrate(f: ArrayOrField, metric: MetricField) -> float:
    """
    Integral of a scalar against dv_g by the product trapezoid rule.

    Every node contributes, margins included; sphere charts therefore omit
    only the pole caps cut from the chart.
    """
    values = _data(f)
    if values.shape != metric.chart.shape:
        raise ValidationError("integrand must be a scalar on the metric's chart")
    weights = metric.chart.quadrature_weights * metric.volume_density
    return deterministic_sum(values * weights)


def inner_product(s: TensorField, t: TensorField, metric: MetricField) -> float:
    """L2 pairing of two fields."""
    return integrate(pointwise_inner(s, t, metric), metric)


def lp_norm(tensor: TensorField, metric: MetricField, p: float) -> float:
    """
    (integral of |T|_g^p dv_g)^(1/p).

    Raises:
        InvalidExponent: if p < 1
    """
    if not p >= 1.0:
        raise InvalidExponent(p)
    norm = pointwise_norm(tensor, metric)
    return integrate(norm**p, metric) ** (1.0 / p)
