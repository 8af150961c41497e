"""
Deformation operators on one-forms: delta*, the Cauchy-Ahlfors operator S
and the Ahlfors Laplacian S*S, pointwise and as sparse matrices.
"""

from functools import reduce
from typing import Optional

import numpy as np
from scipy import sparse

from bochner_lab.core.exceptions import NotClosedManifold, ValidationError
from bochner_lab.domain.geometry.models.fields import (
    CurvatureBundle,
    FieldRole,
    MetricField,
    TensorField,
)
from bochner_lab.domain.geometry.schemas.chart import ChartGrid
from bochner_lab.domain.geometry.services.finite_difference import FIRST_DERIVATIVE
from bochner_lab.domain.geometry.services.operators import (
    connection,
    covariant_derivative,
    divergence_sym2,
    lie_derivative_metric,
    raise_index,
    resolve_order,
)


def _require_one_form(theta: TensorField) -> None:
    if theta.role is not FieldRole.ONE_FORM:
        raise ValidationError(f"expected a one_form field, got {theta.role.value}")


def delta_star(
    theta: TensorField,
    metric: MetricField,
    curv: Optional[CurvatureBundle] = None,
    order: Optional[int] = None,
) -> TensorField:
    """delta* theta = 1/2 L_xi g with xi = theta#."""
    _require_one_form(theta)
    lie = lie_derivative_metric(raise_index(theta, metric), metric, curv, order)
    return lie.scaled(0.5)


def codifferential(
    theta: TensorField,
    metric: MetricField,
    curv: Optional[CurvatureBundle] = None,
    order: Optional[int] = None,
) -> np.ndarray:
    """delta theta = -g^ij nabla_i theta_j."""
    _require_one_form(theta)
    nabla = covariant_derivative(theta, metric, curv, order)
    return -np.einsum("...ij,...ij->...", metric.inverse, nabla)


def cauchy_ahlfors(
    theta: TensorField,
    metric: MetricField,
    curv: Optional[CurvatureBundle] = None,
    order: Optional[int] = None,
) -> TensorField:
    """
    S theta = L_xi g + (2/n) delta theta g, trace-free with trace_g(L_xi g) = -2 delta theta.

    Raises:
        StencilOutOfDomain: if the stencil does not fit a non-periodic margin
    """
    _require_one_form(theta)
    nabla = covariant_derivative(theta, metric, curv, order)
    lie = nabla + np.swapaxes(nabla, -1, -2)
    delta = -np.einsum("...ij,...ij->...", metric.inverse, nabla)
    data = lie + (2.0 / metric.dim) * delta[..., None, None] * metric.components
    return TensorField.sym2(metric.chart, data)


def ahlfors_laplacian(
    theta: TensorField,
    metric: MetricField,
    curv: Optional[CurvatureBundle] = None,
    order: Optional[int] = None,
) -> TensorField:
    """S*S theta = 2 delta(S theta) with (delta T)_j = -g^ik nabla_i T_kj."""
    s_theta = cauchy_ahlfors(theta, metric, curv, order)
    return divergence_sym2(s_theta, metric, curv, order).scaled(2.0)


def _periodic_derivative(n: int, h: float, order: int) -> sparse.csr_matrix:
    offsets, coeffs = FIRST_DERIVATIVE[order][0]
    rows = np.arange(n)
    data, cols, row_index = [], [], []
    for k, c in zip(offsets, coeffs):
        data.append(np.full(n, c / h))
        cols.append((rows + k) % n)
        row_index.append(rows)
    return sparse.csr_matrix(
        (np.concatenate(data), (np.concatenate(row_index), np.concatenate(cols))), shape=(n, n)
    )


def derivative_matrices(chart: ChartGrid, order: int):
    """Central first-derivative matrices per axis over the row-major node order."""
    if not chart.is_closed:
        raise NotClosedManifold()
    identities = [sparse.identity(n, format="csr") for n in chart.resolution]
    out = []
    for axis, (n, h) in enumerate(zip(chart.resolution, chart.spacing)):
        factors = identities[:axis] + [_periodic_derivative(n, h, order)] + identities[axis + 1:]
        out.append(reduce(lambda a, b: sparse.kron(a, b, format="csr"), factors))
    return out


def assemble_deformation(
    metric: MetricField,
    christoffel: Optional[np.ndarray] = None,
    order: Optional[int] = None,
) -> sparse.csr_matrix:
    """
    Sparse matrix of theta -> 1/2 S theta, the trace-free part of
    sym(nabla theta).

    Unknowns are ordered component-major (theta_i at every node, i = 0..n-1);
    rows are ordered by (p, i) pairs of the output tensor, component-major.
    """
    chart = metric.chart
    order = resolve_order(order)
    gamma = connection(metric, order) if christoffel is None else christoffel
    dim, count = chart.dim, chart.node_count
    derivatives = derivative_matrices(chart, order)
    g = metric.components.reshape(count, dim, dim)
    g_inv = metric.inverse.reshape(count, dim, dim)
    gamma = gamma.reshape(count, dim, dim, dim)

    # nabla_p theta_i as a (dim x dim) block grid of N x N matrices over (p, i) and j
    nabla = [[None] * dim for _ in range(dim * dim)]
    for p in range(dim):
        for i in range(dim):
            row = p * dim + i
            for j in range(dim):
                block = sparse.diags(-gamma[:, j, p, i])
                if j == i:
                    block = block + derivatives[p]
                nabla[row][j] = block.tocsr()

    rows = []
    for p in range(dim):
        for i in range(dim):
            blocks = []
            for j in range(dim):
                sym = 0.5 * (nabla[p * dim + i][j] + nabla[i * dim + p][j])
                trace = sum(
                    sparse.diags(g_inv[:, a, b]) @ nabla[a * dim + b][j]
                    for a in range(dim)
                    for b in range(dim)
                )
                blocks.append(sym - sparse.diags(g[:, p, i] / dim) @ trace)
            rows.append(blocks)
    return sparse.bmat(rows, format="csr")


def tensor_mass(metric: MetricField) -> sparse.csr_matrix:
    """Weights of <T, U> = sum w sqrt(g) g^pk g^iq T_pi U_kq in the (p, i) row order."""
    dim = metric.dim
    count = metric.chart.node_count
    weight = (metric.chart.quadrature_weights * metric.volume_density).reshape(count)
    g_inv = metric.inverse.reshape(count, dim, dim)
    blocks = [
        [
            sparse.diags(weight * g_inv[:, p, k] * g_inv[:, i, q])
            for k in range(dim)
            for q in range(dim)
        ]
        for p in range(dim)
        for i in range(dim)
    ]
    return sparse.bmat(blocks, format="csr")


def flatten_components(data: np.ndarray, chart: ChartGrid) -> np.ndarray:
    """Grid-major component array to the component-major vector layout."""
    count = chart.node_count
    flat = data.reshape((count,) + data.shape[chart.dim:])
    flat = flat.reshape(count, -1)
    return np.ascontiguousarray(flat.T).ravel()


def unflatten_components(vector: np.ndarray, chart: ChartGrid, component_shape) -> np.ndarray:
    count = chart.node_count
    size = int(np.prod(component_shape, dtype=int))
    flat = vector.reshape(size, count).T
    return flat.reshape(chart.shape + tuple(component_shape))
