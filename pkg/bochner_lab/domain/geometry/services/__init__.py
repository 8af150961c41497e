"""
Geometry services.
"""

from bochner_lab.domain.geometry.services.curvature import (
    build_levi_civita,
    curvature_extremes,
    curvature_extremes_field,
    model_extremes,
    sectional_curvature,
)
from bochner_lab.domain.geometry.services.finite_difference import FiniteDifference
from bochner_lab.domain.geometry.services.laplacian import assemble_weak_laplacian
from bochner_lab.domain.geometry.services.linalg import (
    deterministic_sum,
    generalized_eigh,
    max_abs,
)
from bochner_lab.domain.geometry.services.operators import (
    connection,
    covariant_derivative,
    differential,
    divergence_sym2,
    inner_product,
    integrate,
    laplace_beltrami,
    lie_derivative_metric,
    lower,
    lp_norm,
    pointwise_inner,
    pointwise_norm,
    raise_index,
    trace_g,
)
from bochner_lab.domain.geometry.services.tolerance import estimated_tolerance, identity_tolerance

__all__ = [
    "FiniteDifference",
    "assemble_weak_laplacian",
    "build_levi_civita",
    "connection",
    "covariant_derivative",
    "curvature_extremes",
    "curvature_extremes_field",
    "deterministic_sum",
    "differential",
    "divergence_sym2",
    "estimated_tolerance",
    "generalized_eigh",
    "identity_tolerance",
    "inner_product",
    "integrate",
    "laplace_beltrami",
    "lie_derivative_metric",
    "lower",
    "lp_norm",
    "max_abs",
    "model_extremes",
    "pointwise_inner",
    "pointwise_norm",
    "raise_index",
    "sectional_curvature",
    "trace_g",
]
