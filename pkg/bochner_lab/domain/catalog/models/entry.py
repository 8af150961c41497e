"""
Built catalog entries and their reference values.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Union

import numpy as np

from bochner_lab.domain.geometry.schemas.chart import ChartGrid
from bochner_lab.domain.maps.models.smooth_map import ChartedManifold, SmoothMap
from bochner_lab.domain.submanifolds.models.immersion import Immersion

Instance = Union[ChartedManifold, SmoothMap, Immersion]


class EntryKind(str, Enum):
    MANIFOLD = "manifold"
    MAP = "map"
    IMMERSION = "immersion"


@dataclass(frozen=True)
class Reference:
    """
    Closed-form value of a measured quantity.

    expected is a constant or a per-node array (grid, or grid + (n,) for
    principal curvatures). signed=False compares up to a global sign, for
    quantities that depend on the normal orientation.
    """

    quantity: str
    expected: Union[float, np.ndarray]
    provenance: str
    signed: bool = True

    @property
    def constant(self) -> bool:
        return np.ndim(self.expected) == 0


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    name: str
    kind: EntryKind
    params: dict
    instance: Instance
    references: List[Reference] = field(default_factory=list)
    order: int = 2

    @property
    def chart(self) -> ChartGrid:
        if isinstance(self.instance, SmoothMap):
            return self.instance.domain.chart
        return self.instance.chart

    @property
    def resolution(self) -> int:
        return max(self.chart.resolution)
