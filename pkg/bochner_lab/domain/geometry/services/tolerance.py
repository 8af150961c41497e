"""
Discretization-aware tolerances.
"""

from typing import Optional

from bochner_lab.core.config import get_settings
from bochner_lab.domain.geometry.schemas.chart import ChartGrid


def identity_tolerance(
    chart: ChartGrid,
    order: int,
    scale: float = 1.0,
    floor: Optional[float] = None,
    factor: float = 10.0,
) -> float:
    """
    max(floor, factor * scale * h^order) for the chart's coarsest spacing.

    For residuals of identities that hold exactly in the continuum; scale is
    the magnitude of the terms that cancel.
    """
    floor = get_settings().TOL_FLOOR if floor is None else floor
    return max(floor, factor * max(scale, 0.0) * chart.max_spacing**order)


def estimated_tolerance(
    error: Optional[float],
    chart: ChartGrid,
    order: int,
    floor: Optional[float] = None,
    factor: float = 10.0,
) -> float:
    """
    max(floor, factor * error) from a measured discretization error.

    Used where a computed quantity is compared against zero or a constant;
    the tolerance then tracks the error of the quantity, not its size.
    Without an estimate it falls back to max(floor, factor * h^order).
    """
    if error is None:
        return identity_tolerance(chart, order, floor=floor, factor=factor)
    floor = get_settings().TOL_FLOOR if floor is None else floor
    return max(floor, factor * max(error, 0.0))
