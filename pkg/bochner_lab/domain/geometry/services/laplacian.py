"""
Symmetric weak-form assembly of the Laplace-Beltrami operator.

u^T K u approximates the Dirichlet integral of u, so -K u = lambda W u is the
discrete eigenproblem of Delta with lumped mass W = trapezoid weight * sqrt(g).
"""

from functools import reduce
from typing import List, Tuple

import numpy as np
from scipy import sparse

from bochner_lab.domain.geometry.models.fields import MetricField
from bochner_lab.domain.geometry.schemas.chart import ChartGrid


def _forward(n: int, h: float, periodic: bool) -> Tuple[sparse.csr_matrix, sparse.csr_matrix]:
    """Forward difference and midpoint average, edges x nodes."""
    edges = n if periodic else n - 1
    rows = np.arange(edges)
    right = (rows + 1) % n
    diff = sparse.csr_matrix(
        (np.concatenate([-np.ones(edges), np.ones(edges)]) / h,
         (np.concatenate([rows, rows]), np.concatenate([rows, right]))),
        shape=(edges, n),
    )
    mean = sparse.csr_matrix(
        (np.full(2 * edges, 0.5), (np.concatenate([rows, rows]), np.concatenate([rows, right]))),
        shape=(edges, n),
    )
    return diff, mean


def _central(n: int, h: float, periodic: bool) -> sparse.csr_matrix:
    if periodic:
        rows = np.arange(n)
        return sparse.csr_matrix(
            (np.concatenate([-np.ones(n), np.ones(n)]) / (2 * h),
             (np.concatenate([rows, rows]), np.concatenate([(rows - 1) % n, (rows + 1) % n]))),
            shape=(n, n),
        )
    mat = sparse.lil_matrix((n, n))
    for i in range(1, n - 1):
        mat[i, i - 1] = -0.5 / h
        mat[i, i + 1] = 0.5 / h
    mat[0, 0], mat[0, 1] = -1.0 / h, 1.0 / h
    mat[n - 1, n - 2], mat[n - 1, n - 1] = -1.0 / h, 1.0 / h
    return mat.tocsr()


def _trapezoid(n: int, h: float, periodic: bool) -> np.ndarray:
    w = np.full(n, h)
    if not periodic:
        w[0] = w[-1] = 0.5 * h
    return w


def _kron(factors: List) -> sparse.csr_matrix:
    return reduce(lambda a, b: sparse.kron(a, b, format="csr"), factors)


def _outer(vectors: List[np.ndarray]) -> np.ndarray:
    return reduce(np.multiply.outer, vectors).ravel()


def assemble_weak_laplacian(metric: MetricField) -> Tuple[sparse.csr_matrix, np.ndarray]:
    """
    Stiffness matrix K and lumped mass W over the row-major node ordering.

    Diagonal metric terms use forward differences with midpoint-averaged
    coefficients; off-diagonal terms use centred differences at the nodes.
    """
    chart: ChartGrid = metric.chart
    dim = chart.dim
    coeff = metric.volume_density[..., None, None] * metric.inverse
    identities = [sparse.identity(n, format="csr") for n in chart.resolution]
    weights = [
        _trapezoid(n, h, per)
        for n, h, per in zip(chart.resolution, chart.spacing, chart.periodic)
    ]

    stiffness = sparse.csr_matrix((chart.node_count, chart.node_count))
    for p in range(dim):
        n, h, per = chart.resolution[p], chart.spacing[p], chart.periodic[p]
        diff, mean = _forward(n, h, per)
        edge_diff = _kron(identities[:p] + [diff] + identities[p + 1:])
        edge_mean = _kron(identities[:p] + [mean] + identities[p + 1:])
        edge_weight = _outer(weights[:p] + [np.full(diff.shape[0], h)] + weights[p + 1:])
        c_edge = edge_mean @ coeff[..., p, p].ravel()
        stiffness = stiffness + edge_diff.T @ sparse.diags(edge_weight * c_edge) @ edge_diff

    node_weight = _outer(weights)
    central = [
        _kron(identities[:p] + [_central(n, h, per)] + identities[p + 1:])
        for p, (n, h, per) in enumerate(
            zip(chart.resolution, chart.spacing, chart.periodic)
        )
    ]
    for p in range(dim):
        for q in range(dim):
            if p == q:
                continue
            c_pq = coeff[..., p, q].ravel()
            if not np.any(c_pq):
                continue
            stiffness = stiffness + central[p].T @ sparse.diags(node_weight * c_pq) @ central[q]

    mass = node_weight * metric.volume_density.ravel()
    return stiffness.tocsr(), mass
