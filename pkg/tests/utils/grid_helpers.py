"""
Helpers for grid-refinement assertions.
"""

import math
from typing import Callable, Sequence

import numpy as np

from bochner_lab.domain.geometry.schemas.chart import ChartGrid


def observed_order(errors: Sequence[float], resolutions: Sequence[int]) -> float:
    """
    Order of decay between the two finest resolutions.

    Args:
        errors: Error at each resolution
        resolutions: Node counts per axis, increasing

    Returns:
        log(e_coarse / e_fine) / log(n_fine / n_coarse)
    """
    e0, e1 = errors[-2], errors[-1]
    n0, n1 = resolutions[-2], resolutions[-1]
    return math.log(e0 / e1) / math.log(n1 / n0)


def refine(
    chart: ChartGrid, resolutions: Sequence[int], error: Callable[[ChartGrid], float]
) -> float:
    """Observed order of error(chart) over the given node counts."""
    errors = [error(chart.with_resolution(n)) for n in resolutions]
    return observed_order(errors, resolutions)


def interior_max(values: np.ndarray, chart: ChartGrid) -> float:
    """Largest absolute value over non-margin nodes."""
    return float(np.abs(values[chart.interior_mask]).max())
