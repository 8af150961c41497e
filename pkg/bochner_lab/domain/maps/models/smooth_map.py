"""
Smooth maps between charted manifolds.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from bochner_lab.core.exceptions import ValidationError
from bochner_lab.domain.geometry.models.fields import CurvatureBundle, MetricField
from bochner_lab.domain.geometry.models.metric_models import MetricModel
from bochner_lab.domain.geometry.schemas.chart import ChartGrid
from bochner_lab.domain.geometry.services.finite_difference import FiniteDifference


@dataclass(frozen=True, eq=False)
class ChartedManifold:
    """A chart with its metric, curvature and optional closed-form metric."""

    name: str
    chart: ChartGrid
    metric: MetricField
    curvature: CurvatureBundle
    model: Optional[MetricModel] = None

    @property
    def dim(self) -> int:
        return self.chart.dim

    @property
    def period(self) -> np.ndarray:
        """Coordinate period per axis, 0 on non-periodic axes."""
        return np.array(
            [hi - lo if per else 0.0 for (lo, hi), per in zip(self.chart.bounds, self.chart.periodic)]
        )


@dataclass(frozen=True, eq=False)
class SmoothMap:
    """
    A map f between charted manifolds sampled on the domain grid.

    differential[..., i, alpha] = d_i f^alpha and, when known in closed form,
    second_derivatives[..., i, j, alpha] = d_i d_j f^alpha. Codomain geometry
    is evaluated at the image points through the codomain's metric model.
    """

    domain: ChartedManifold
    codomain: ChartedManifold
    components: np.ndarray
    differential: np.ndarray
    differential_mode: str
    second_derivatives: Optional[np.ndarray] = None
    order: int = 2
    name: str = "map"

    def __post_init__(self):
        if self.codomain.model is None:
            raise ValidationError("codomain needs a closed-form metric model")
        n, m = self.domain.dim, self.codomain.dim
        shape = self.domain.chart.shape
        if self.components.shape != shape + (m,):
            raise ValidationError(
                f"components have shape {self.components.shape}, expected {shape + (m,)}"
            )
        if self.differential.shape != shape + (n, m):
            raise ValidationError("differential has the wrong shape")
        wrapped = self.components.copy()
        for axis, ((lo, hi), per) in enumerate(
            zip(self.codomain.chart.bounds, self.codomain.chart.periodic)
        ):
            if per:
                wrapped[..., axis] = lo + np.mod(wrapped[..., axis] - lo, hi - lo)
            elif np.any(wrapped[..., axis] < lo - 1e-12) or np.any(
                wrapped[..., axis] > hi + 1e-12
            ):
                raise ValidationError(f"image leaves the codomain chart along axis {axis}")
        wrapped.setflags(write=False)
        object.__setattr__(self, "components", wrapped)

    @classmethod
    def from_components(
        cls,
        domain: ChartedManifold,
        codomain: ChartedManifold,
        components: np.ndarray,
        differential: Optional[np.ndarray] = None,
        second_derivatives: Optional[np.ndarray] = None,
        order: int = 2,
        name: str = "map",
    ) -> "SmoothMap":
        """
        Build a map, differentiating the components when no closed-form
        differential is given. Periodic codomain values are unwrapped across
        seams before differencing.
        """
        components = np.asarray(components, dtype=float)
        if differential is None:
            fd = FiniteDifference(domain.chart, order)
            differential = fd.gradient(components, codomain.period)
            second_derivatives = None
            mode = "finite_difference"
        else:
            mode = "analytic"
        return cls(
            domain=domain,
            codomain=codomain,
            components=components,
            differential=np.asarray(differential, dtype=float),
            differential_mode=mode,
            second_derivatives=second_derivatives,
            order=order,
            name=name,
        )

    @property
    def source_dim(self) -> int:
        return self.domain.dim

    @property
    def target_dim(self) -> int:
        return self.codomain.dim

    @cached_property
    def image_metric(self) -> np.ndarray:
        return self.codomain.model.metric(self.components)

    @cached_property
    def image_christoffel(self) -> np.ndarray:
        return self.codomain.model.christoffel(self.components)

    @cached_property
    def image_riemann(self) -> np.ndarray:
        return self.codomain.model.riemann(self.components)

    @cached_property
    def image_ricci(self) -> np.ndarray:
        return self.codomain.model.ricci(self.components)


@dataclass(frozen=True, eq=False)
class PhiTensor:
    """
    Phi^{ab} = f_k^a f_l^b g^kl with its eigenvalues relative to the codomain
    metric, sorted in descending order, and the matching eigenframe.
    """

    phi: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def trace(self) -> np.ndarray:
        return self.eigenvalues.sum(axis=-1)

    @property
    def trace_sq(self) -> np.ndarray:
        return (self.eigenvalues**2).sum(axis=-1)
