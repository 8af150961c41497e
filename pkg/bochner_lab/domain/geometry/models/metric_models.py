"""
Closed-form metric evaluators.

Each model evaluates g, its first and second coordinate derivatives at
arbitrary points x of shape (..., n). Models with constant sectional
curvature expose it as constant_curvature.
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from bochner_lab.domain.geometry.models.connection import (
    christoffel_from_jet,
    levi_civita_from_jet,
    space_form_riemann,
)


class MetricModel(ABC):
    """Base class for analytic metrics."""

    name: str = "metric"
    constant_curvature: Optional[float] = None

    def __init__(self, dim: int):
        self.dim = dim

    @abstractmethod
    def metric(self, x: np.ndarray) -> np.ndarray:
        """g[..., i, j]."""

    @abstractmethod
    def metric_derivatives(self, x: np.ndarray) -> np.ndarray:
        """dg[..., p, i, j] = d_p g_ij."""

    @abstractmethod
    def metric_second_derivatives(self, x: np.ndarray) -> np.ndarray:
        """ddg[..., p, q, i, j] = d_p d_q g_ij."""

    def describe(self) -> Dict[str, Any]:
        return {"name": self.name, "dim": self.dim}

    def jet(self, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        x = np.asarray(x, dtype=float)
        return (
            self.metric(x),
            self.metric_derivatives(x),
            self.metric_second_derivatives(x),
        )

    def christoffel(self, x: np.ndarray) -> np.ndarray:
        """Gamma^k_ij at the given points."""
        g = self.metric(x)
        return christoffel_from_jet(np.linalg.inv(g), self.metric_derivatives(x))

    def riemann(self, x: np.ndarray) -> np.ndarray:
        g, dg, ddg = self.jet(x)
        if self.constant_curvature is not None:
            return space_form_riemann(g, self.constant_curvature)
        return levi_civita_from_jet(g, np.linalg.inv(g), dg, ddg)[1]

    def ricci(self, x: np.ndarray) -> np.ndarray:
        g, dg, ddg = self.jet(x)
        if self.constant_curvature is not None:
            return (self.dim - 1) * self.constant_curvature * g
        return levi_civita_from_jet(g, np.linalg.inv(g), dg, ddg)[2]

    def _zeros(self, x: np.ndarray, order: int) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.zeros(x.shape[:-1] + (self.dim,) * (order + 2))


class FlatMetric(MetricModel):
    """Constant diagonal metric sum_i c_i (dx^i)^2."""

    name = "flat"
    constant_curvature = 0.0

    def __init__(self, dim: int, diagonal: Optional[Sequence[float]] = None):
        super().__init__(dim)
        self.diagonal = np.ones(dim) if diagonal is None else np.asarray(diagonal, float)
        if self.diagonal.shape != (dim,) or np.any(self.diagonal <= 0):
            raise ValueError("flat metric needs one positive coefficient per axis")

    def describe(self) -> Dict[str, Any]:
        return {**super().describe(), "diagonal": self.diagonal.tolist()}

    def metric(self, x: np.ndarray) -> np.ndarray:
        g = self._zeros(x, 0)
        g[...] = np.diag(self.diagonal)
        return g

    def metric_derivatives(self, x: np.ndarray) -> np.ndarray:
        return self._zeros(x, 1)

    def metric_second_derivatives(self, x: np.ndarray) -> np.ndarray:
        return self._zeros(x, 2)


class HypersphericalMetric(MetricModel):
    """
    Round n-sphere of radius r in coordinates (theta_1, ..., theta_{n-1}, phi).

    g = r^2 (dtheta_1^2 + sin^2 theta_1 dtheta_2^2 + ...), so g_kk is r^2 times
    the product of sin^2 of the preceding polar angles.
    """

    name = "round_sphere"

    def __init__(self, dim: int, radius: float = 1.0):
        if dim < 2:
            raise ValueError("hyperspherical coordinates need dim >= 2")
        if radius <= 0:
            raise ValueError("radius must be positive")
        super().__init__(dim)
        self.radius = float(radius)
        self.constant_curvature = 1.0 / self.radius**2

    def describe(self) -> Dict[str, Any]:
        return {**super().describe(), "radius": self.radius}

    def _diagonal(self, x: np.ndarray):
        x = np.asarray(x, dtype=float)
        polar = x[..., : self.dim - 1]
        sin, cos = np.sin(polar), np.cos(polar)
        prefix = np.cumprod(sin**2, axis=-1)
        ones = np.ones(x.shape[:-1] + (1,))
        diag = self.radius**2 * np.concatenate([ones, prefix], axis=-1)
        return diag, cos / sin, 1.0 / sin**2

    def metric(self, x: np.ndarray) -> np.ndarray:
        diag, _, _ = self._diagonal(x)
        g = self._zeros(x, 0)
        idx = np.arange(self.dim)
        g[..., idx, idx] = diag
        return g

    def metric_derivatives(self, x: np.ndarray) -> np.ndarray:
        diag, cot, _ = self._diagonal(x)
        dg = self._zeros(x, 1)
        for k in range(1, self.dim):
            for p in range(k):
                dg[..., p, k, k] = 2.0 * cot[..., p] * diag[..., k]
        return dg

    def metric_second_derivatives(self, x: np.ndarray) -> np.ndarray:
        diag, cot, csc2 = self._diagonal(x)
        ddg = self._zeros(x, 2)
        for k in range(1, self.dim):
            for p in range(k):
                for q in range(k):
                    if p == q:
                        factor = 4.0 * cot[..., p] ** 2 - 2.0 * csc2[..., p]
                    else:
                        factor = 4.0 * cot[..., p] * cot[..., q]
                    ddg[..., p, q, k, k] = factor * diag[..., k]
        return ddg


class ProductMetric(MetricModel):
    """Riemannian product of factor metrics, coordinates concatenated."""

    name = "product"

    def __init__(self, factors: List[MetricModel]):
        super().__init__(sum(f.dim for f in factors))
        self.factors = factors
        offsets = np.cumsum([0] + [f.dim for f in factors])
        self.blocks = [slice(int(a), int(b)) for a, b in zip(offsets[:-1], offsets[1:])]
        self.constant_curvature = (
            0.0 if all(f.constant_curvature == 0.0 for f in factors) else None
        )

    def describe(self) -> Dict[str, Any]:
        return {**super().describe(), "factors": [f.describe() for f in self.factors]}

    def metric(self, x: np.ndarray) -> np.ndarray:
        g = self._zeros(x, 0)
        for factor, block in zip(self.factors, self.blocks):
            g[..., block, block] = factor.metric(x[..., block])
        return g

    def metric_derivatives(self, x: np.ndarray) -> np.ndarray:
        dg = self._zeros(x, 1)
        for factor, block in zip(self.factors, self.blocks):
            dg[..., block, block, block] = factor.metric_derivatives(x[..., block])
        return dg

    def metric_second_derivatives(self, x: np.ndarray) -> np.ndarray:
        ddg = self._zeros(x, 2)
        for factor, block in zip(self.factors, self.blocks):
            ddg[..., block, block, block, block] = factor.metric_second_derivatives(
                x[..., block]
            )
        return ddg


class JoinSphereMetric(MetricModel):
    """
    Unit sphere S^(n1+n2+1) as the spherical join of S^n1 and S^n2.

    Coordinates (eta, y1, y2) stand for (sin(eta) p1(y1), cos(eta) p2(y2)),
    so g = deta^2 + sin^2(eta) g1 + cos^2(eta) g2 with g1, g2 the unit
    factor metrics. The level sets eta = const are the products
    S^n1(sin eta) x S^n2(cos eta).
    """

    name = "join_sphere"
    constant_curvature = 1.0

    def __init__(self, n1: int, n2: int):
        super().__init__(1 + n1 + n2)
        self.factors = [_unit_sphere(n1), _unit_sphere(n2)]
        self.blocks = [slice(1, 1 + n1), slice(1 + n1, 1 + n1 + n2)]

    def describe(self) -> Dict[str, Any]:
        return {**super().describe(), "factors": [f.describe() for f in self.factors]}

    def _warps(self, x: np.ndarray):
        """Warping functions sin^2, cos^2 with their first and second eta-derivatives."""
        eta = np.asarray(x, dtype=float)[..., 0]
        sin, cos = np.sin(eta), np.cos(eta)
        two_sc, two_cos2 = 2.0 * sin * cos, 2.0 * np.cos(2.0 * eta)
        return zip(
            self.factors,
            self.blocks,
            (sin**2, cos**2),
            (two_sc, -two_sc),
            (two_cos2, -two_cos2),
        )

    def metric(self, x: np.ndarray) -> np.ndarray:
        g = self._zeros(x, 0)
        g[..., 0, 0] = 1.0
        for factor, block, w, _, _ in self._warps(x):
            g[..., block, block] = w[..., None, None] * factor.metric(x[..., block])
        return g

    def metric_derivatives(self, x: np.ndarray) -> np.ndarray:
        dg = self._zeros(x, 1)
        for factor, block, w, dw, _ in self._warps(x):
            xb = x[..., block]
            dg[..., 0, block, block] = dw[..., None, None] * factor.metric(xb)
            dg[..., block, block, block] = w[..., None, None, None] * factor.metric_derivatives(xb)
        return dg

    def metric_second_derivatives(self, x: np.ndarray) -> np.ndarray:
        ddg = self._zeros(x, 2)
        for factor, block, w, dw, ddw in self._warps(x):
            xb = x[..., block]
            ddg[..., 0, 0, block, block] = ddw[..., None, None] * factor.metric(xb)
            cross = dw[..., None, None, None] * factor.metric_derivatives(xb)
            ddg[..., 0, block, block, block] = cross
            ddg[..., block, 0, block, block] = cross
            ddg[..., block, block, block, block] = (
                w[..., None, None, None, None] * factor.metric_second_derivatives(xb)
            )
        return ddg


def _unit_sphere(k: int) -> MetricModel:
    """Unit S^k in angle coordinates; the circle is flat in its angle."""
    return FlatMetric(1) if k == 1 else HypersphericalMetric(k)
