"""
Isometric immersions into ambient manifolds given by closed-form metrics.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from bochner_lab.core.exceptions import DegenerateImmersion, ValidationError
from bochner_lab.domain.geometry.models.fields import MetricField
from bochner_lab.domain.geometry.models.metric_models import MetricModel
from bochner_lab.domain.geometry.schemas.chart import ChartGrid
from bochner_lab.domain.geometry.services.finite_difference import FiniteDifference

RANK_FLOOR = 1e-8


@dataclass(frozen=True, eq=False)
class AmbientSpace:
    """
    Ambient manifold of dimension n + k.

    Only the closed-form model is stored; metric, connection and curvature
    are evaluated at the image points of an immersion. The optional chart
    supplies coordinate periods and bounds.
    """

    name: str
    model: MetricModel
    chart: Optional[ChartGrid] = None

    @property
    def dim(self) -> int:
        return self.model.dim

    @property
    def constant_curvature(self) -> Optional[float]:
        return self.model.constant_curvature

    @property
    def period(self) -> np.ndarray:
        if self.chart is None:
            return np.zeros(self.dim)
        return np.array(
            [hi - lo if per else 0.0 for (lo, hi), per in zip(self.chart.bounds, self.chart.periodic)]
        )

    def wrap(self, points: np.ndarray) -> np.ndarray:
        """Reduce periodic coordinates into the chart and check the others."""
        points = np.array(points, dtype=float, copy=True)
        if self.chart is None:
            return points
        for axis, ((lo, hi), per) in enumerate(zip(self.chart.bounds, self.chart.periodic)):
            if per:
                points[..., axis] = lo + np.mod(points[..., axis] - lo, hi - lo)
            elif np.any(points[..., axis] < lo - 1e-12) or np.any(points[..., axis] > hi + 1e-12):
                raise ValidationError(f"image leaves the ambient chart along axis {axis}")
        return points


@dataclass(frozen=True, eq=False)
class Immersion:
    """
    An immersion F of an n-dimensional chart into an ambient space.

    components[..., alpha] are ambient coordinates of F at every node.
    Tangent vectors and second derivatives are finite differences of the
    components, unwrapped across periodic ambient seams. normal_reference
    fixes the orientation of the normal frame: one ambient vector per node
    for hypersurfaces, k vectors per node ([..., a, alpha]) otherwise.
    """

    chart: ChartGrid
    ambient: AmbientSpace
    components: np.ndarray
    order: int = 2
    name: str = "immersion"
    normal_reference: Optional[np.ndarray] = None

    def __post_init__(self):
        expected = self.chart.shape + (self.ambient.dim,)
        components = np.asarray(self.components, dtype=float)
        if components.shape != expected:
            raise ValidationError(
                f"immersion components have shape {components.shape}, expected {expected}"
            )
        if self.ambient.dim <= self.chart.dim:
            raise ValidationError("codimension must be at least 1")
        components = self.ambient.wrap(components)
        components.setflags(write=False)
        object.__setattr__(self, "components", components)

    @property
    def dim(self) -> int:
        return self.chart.dim

    @property
    def ambient_dim(self) -> int:
        return self.ambient.dim

    @property
    def codimension(self) -> int:
        return self.ambient.dim - self.chart.dim

    @property
    def ambient_constant_curvature(self) -> Optional[float]:
        return self.ambient.constant_curvature

    @cached_property
    def fd(self) -> FiniteDifference:
        return FiniteDifference(self.chart, self.order)

    @cached_property
    def tangent(self) -> np.ndarray:
        """F_i^alpha, shape grid + (n, n + k)."""
        return self.fd.gradient(self.components, self.ambient.period)

    @cached_property
    def second_derivatives(self) -> np.ndarray:
        """d_i d_j F^alpha, shape grid + (n, n, n + k)."""
        return self.fd.hessian(self.components, self.ambient.period)

    @cached_property
    def ambient_metric(self) -> np.ndarray:
        return self.ambient.model.metric(self.components)

    @cached_property
    def ambient_christoffel(self) -> np.ndarray:
        return self.ambient.model.christoffel(self.components)

    @cached_property
    def ambient_riemann(self) -> np.ndarray:
        return self.ambient.model.riemann(self.components)

    @cached_property
    def ambient_ricci(self) -> np.ndarray:
        return self.ambient.model.ricci(self.components)

    @cached_property
    def ambient_hessian(self) -> np.ndarray:
        """nabla-bar_{F_i} F_j = d_i d_j F + Gamma-bar(F_i, F_j), symmetric in (i, j)."""
        tangent = self.tangent
        hess = self.second_derivatives + np.einsum(
            "...abc,...ib,...jc->...ija", self.ambient_christoffel, tangent, tangent
        )
        return 0.5 * (hess + np.swapaxes(hess, -2, -3))

    @cached_property
    def induced_metric(self) -> MetricField:
        """
        Pullback of the ambient metric.

        Raises:
            DegenerateImmersion: if the tangent vectors are dependent at a node
        """
        tangent = self.tangent
        pulled = np.einsum("...ia,...jb,...ab->...ij", tangent, tangent, self.ambient_metric)
        pulled = 0.5 * (pulled + np.swapaxes(pulled, -1, -2))
        singular = np.sqrt(np.maximum(np.linalg.eigvalsh(pulled)[..., 0], 0.0))
        if not np.all(singular > RANK_FLOOR):
            node = np.unravel_index(int(np.argmin(singular)), self.chart.shape)
            raise DegenerateImmersion(tuple(int(i) for i in node), float(singular[node]))
        return MetricField.from_components(self.chart, pulled)


@dataclass(frozen=True, eq=False)
class NormalFrame:
    """
    k ambient vectors per node, vectors[..., a, alpha], g-bar-orthonormal and
    orthogonal to the tangent space. orientation is the global sign applied
    to a hypersurface normal (+1 or -1; 1 for higher codimension).
    """

    vectors: np.ndarray
    orientation: int = 1

    @property
    def count(self) -> int:
        return self.vectors.shape[-2]


@dataclass(frozen=True, eq=False)
class SecondFundamentalData:
    """
    Second fundamental form of an immersion in its normal frame.

    phi[..., i, j, a] = g-bar(nabla-bar_{F_i} F_j, N_a); mean_curvature[..., a]
    with n H_a = trace_g(phi_a); shape_operator[..., i, j] = A^i_j for
    hypersurfaces; christoffel holds the induced connection obtained from the
    tangential part of the ambient second derivative. discretization_error
    is the largest change of |phi|, |phi|^2 and H under the other stencil
    order, or None when the chart margins leave no room for it.
    """

    metric: MetricField
    frame: NormalFrame
    phi: np.ndarray
    mean_curvature: np.ndarray
    phi_norm_sq: np.ndarray
    christoffel: np.ndarray
    shape_operator: Optional[np.ndarray] = None
    order: int = 2
    discretization_error: Optional[float] = None

    @property
    def dim(self) -> int:
        return self.metric.dim

    @property
    def codimension(self) -> int:
        return self.phi.shape[-1]

    @property
    def scalar_mean_curvature(self) -> np.ndarray:
        """H for hypersurfaces, |H| otherwise."""
        if self.codimension == 1:
            return self.mean_curvature[..., 0]
        return np.sqrt(np.einsum("...a,...a->...", self.mean_curvature, self.mean_curvature))

    @property
    def phi_norm(self) -> np.ndarray:
        return np.sqrt(np.maximum(self.phi_norm_sq, 0.0))
