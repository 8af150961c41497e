"""
Jacobi (stability) operator of a hypersurface.
"""

from dataclasses import dataclass, replace
from functools import cached_property

import numpy as np

from bochner_lab.domain.geometry.models.fields import MetricField
from bochner_lab.domain.geometry.schemas.chart import ChartGrid
from bochner_lab.domain.geometry.services.finite_difference import FiniteDifference
from bochner_lab.domain.submanifolds.models.immersion import SecondFundamentalData

RICCI_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class JacobiOperator:
    """
    L = Delta + V with V = ||phi||^2 + Ric-bar(N, N).

    Delta is the Laplace-Beltrami operator of the induced metric with a
    non-positive spectrum. normal_ricci holds Ric-bar(N, N) per node and
    potential the full V.
    """

    data: SecondFundamentalData
    potential: np.ndarray
    normal_ricci: np.ndarray
    name: str = "hypersurface"

    @property
    def metric(self) -> MetricField:
        return self.data.metric

    @property
    def chart(self) -> ChartGrid:
        return self.data.metric.chart

    @property
    def order(self) -> int:
        return self.data.order

    @cached_property
    def fd(self) -> FiniteDifference:
        return FiniteDifference(self.chart, self.order)

    @property
    def ricci_negative(self) -> bool:
        return bool(self.normal_ricci.min() < -RICCI_FLOOR)

    def shifted(self, constant: float) -> "JacobiOperator":
        """The operator with V + constant."""
        return replace(self, potential=self.potential + constant)
