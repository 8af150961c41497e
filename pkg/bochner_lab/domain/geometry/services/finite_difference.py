"""
Central finite differences on chart grids.
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from bochner_lab.core.exceptions import StencilOutOfDomain, ValidationError
from bochner_lab.domain.geometry.schemas.chart import ChartGrid

logger = logging.getLogger(__name__)

Stencil = Tuple[Tuple[int, ...], Tuple[float, ...]]

# (central stencil, one-sided closures for nodes 0, 1, ...), coefficients
# in units of 1/h (first derivative) or 1/h^2 (second derivative)
FIRST_DERIVATIVE: Dict[int, Tuple[Stencil, List[Stencil]]] = {
    2: (((-1, 1), (-0.5, 0.5)), [((0, 1, 2), (-1.5, 2.0, -0.5))]),
    4: (
        ((-2, -1, 1, 2), (1 / 12, -8 / 12, 8 / 12, -1 / 12)),
        [
            ((0, 1, 2, 3, 4), (-25 / 12, 48 / 12, -36 / 12, 16 / 12, -3 / 12)),
            ((-1, 0, 1, 2, 3), (-3 / 12, -10 / 12, 18 / 12, -6 / 12, 1 / 12)),
        ],
    ),
}
SECOND_DERIVATIVE: Dict[int, Tuple[Stencil, List[Stencil]]] = {
    2: (((-1, 0, 1), (1.0, -2.0, 1.0)), [((0, 1, 2, 3), (2.0, -5.0, 4.0, -1.0))]),
    4: (
        ((-2, -1, 0, 1, 2), (-1 / 12, 16 / 12, -30 / 12, 16 / 12, -1 / 12)),
        [
            (
                (0, 1, 2, 3, 4, 5),
                (45 / 12, -154 / 12, 214 / 12, -156 / 12, 61 / 12, -10 / 12),
            ),
            (
                (-1, 0, 1, 2, 3, 4),
                (10 / 12, -15 / 12, -4 / 12, 14 / 12, -6 / 12, 1 / 12),
            ),
        ],
    ),
}


class FiniteDifference:
    """
    Derivatives of grid functions along chart axes.

    Arrays carry the grid axes first and any component axes after them.
    Periodic axes use centred stencils throughout; non-periodic axes close
    with one-sided stencils of the same order at both ends. Every stencil is
    applied to differences f[i+k] - f[i], which keeps constants exactly in
    the kernel and allows wrapping of periodic codomain values.
    """

    def __init__(self, chart: ChartGrid, order: int = 2):
        if order not in FIRST_DERIVATIVE:
            raise ValidationError(f"finite-difference order must be 2 or 4, got {order}")
        self.chart = chart
        self.order = order
        half_width = order // 2
        for axis in range(chart.dim):
            if chart.periodic[axis]:
                continue
            margin_nodes = chart.margin_nodes(axis)
            if margin_nodes < half_width:
                raise StencilOutOfDomain(axis, margin_nodes, half_width)

    def diff(
        self, f: np.ndarray, axis: int, period: Optional[np.ndarray] = None
    ) -> np.ndarray:
        """
        First derivative along one axis.

        Args:
            f: Grid function, shape chart.shape + component shape
            axis: Chart axis
            period: Optional codomain period per component (0 = no wrapping)

        Returns:
            Array of the same shape as f
        """
        central, closures = FIRST_DERIVATIVE[self.order]
        h = self.chart.spacing[axis]
        return self._apply(f, axis, central, closures, -1.0, period) / h

    def diff2(self, f: np.ndarray, axis: int, period: Optional[np.ndarray] = None):
        """Second derivative along one axis with the compact stencil."""
        central, closures = SECOND_DERIVATIVE[self.order]
        h = self.chart.spacing[axis]
        return self._apply(f, axis, central, closures, 1.0, period) / h**2

    def gradient(self, f: np.ndarray, period: Optional[np.ndarray] = None) -> np.ndarray:
        """All first derivatives, derivative index inserted after the grid axes."""
        return np.stack(
            [self.diff(f, a, period) for a in range(self.chart.dim)], axis=self.chart.dim
        )

    def hessian(self, f: np.ndarray, period: Optional[np.ndarray] = None) -> np.ndarray:
        """
        All second derivatives d_p d_q f, indices (p, q) after the grid axes.

        Diagonal entries use compact stencils, mixed entries nested first
        differences; the result is exactly symmetric in (p, q).
        """
        dim = self.chart.dim
        f = np.asarray(f, dtype=float)
        out = np.empty(f.shape[:dim] + (dim, dim) + f.shape[dim:])
        first = [self.diff(f, a, period) for a in range(dim)]
        for p in range(dim):
            out[_at(dim, p, p)] = self.diff2(f, p, period)
            for q in range(p + 1, dim):
                mixed = self.diff(first[q], p)
                out[_at(dim, p, q)] = mixed
                out[_at(dim, q, p)] = mixed
        return out

    def _apply(
        self,
        f: np.ndarray,
        axis: int,
        central: Stencil,
        closures: Sequence[Stencil],
        parity: float,
        period: Optional[np.ndarray],
    ) -> np.ndarray:
        f = np.asarray(f, dtype=float)
        n = f.shape[axis]
        offsets, coeffs = central
        if self.chart.periodic[axis]:
            out = np.zeros_like(f)
            for k, c in zip(offsets, coeffs):
                if k:
                    out += c * _wrap(np.roll(f, -k, axis=axis) - f, period)
            return out

        out = np.empty_like(f)
        half = max(offsets)
        inner = np.arange(half, n - half)
        base = np.take(f, inner, axis=axis)
        acc = np.zeros_like(base)
        for k, c in zip(offsets, coeffs):
            if k:
                acc += c * _wrap(np.take(f, inner + k, axis=axis) - base, period)
        out[_along(f.ndim, axis, inner)] = acc

        for node, (offs, cs) in enumerate(closures):
            for index, sign, scale in ((node, 1, 1.0), (n - 1 - node, -1, parity)):
                here = np.take(f, [index], axis=axis)
                acc = np.zeros_like(here)
                for k, c in zip(offs, cs):
                    if k:
                        there = np.take(f, [index + sign * k], axis=axis)
                        acc += scale * c * _wrap(there - here, period)
                out[_along(f.ndim, axis, [index])] = acc
        return out


def _wrap(delta: np.ndarray, period: Optional[np.ndarray]) -> np.ndarray:
    if period is None:
        return delta
    period = np.asarray(period, dtype=float)
    active = period > 0
    if not np.any(active):
        return delta
    safe = np.where(active, period, 1.0)
    return np.where(active, delta - safe * np.round(delta / safe), delta)


def _along(ndim: int, axis: int, index) -> Tuple:
    sl: List = [slice(None)] * ndim
    sl[axis] = index
    return tuple(sl)


def _at(dim: int, p: int, q: int) -> Tuple:
    return (slice(None),) * dim + (p, q)
