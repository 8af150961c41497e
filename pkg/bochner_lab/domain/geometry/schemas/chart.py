"""
Pydantic schema for chart grids.
"""

import math
from functools import lru_cache
from typing import List, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

MIN_RESOLUTION = 8
MAX_MARGIN = 0.25


class ChartGrid(BaseModel):
    """
    Rectangular coordinate domain sampled on a tensor-product grid.

    Periodic axes hold N nodes lo + i*h with h = (hi - lo)/N; non-periodic axes
    hold N nodes including both end points, h = (hi - lo)/(N - 1). Nodes are
    enumerated in row-major order.
    """

    model_config = ConfigDict(frozen=True)

    dim: int = Field(..., ge=1, description="Chart dimension n")
    bounds: List[Tuple[float, float]] = Field(
        ..., description="Closed coordinate interval per axis"
    )
    resolution: List[int] = Field(..., description="Node count per axis")
    periodic: List[bool] = Field(..., description="Periodicity flag per axis")
    margin: List[float] = Field(
        ..., description="Excluded boundary fraction per non-periodic axis"
    )

    @model_validator(mode="after")
    def check_axes(self) -> "ChartGrid":
        for name in ("bounds", "resolution", "periodic", "margin"):
            if len(getattr(self, name)) != self.dim:
                raise ValueError(f"{name} must have one entry per axis ({self.dim})")
        for axis in range(self.dim):
            lo, hi = self.bounds[axis]
            if not hi > lo:
                raise ValueError(f"axis {axis}: upper bound must exceed lower bound")
            if self.resolution[axis] < MIN_RESOLUTION:
                raise ValueError(
                    f"axis {axis}: resolution must be >= {MIN_RESOLUTION}"
                )
            if not 0.0 <= self.margin[axis] <= MAX_MARGIN:
                raise ValueError(f"axis {axis}: margin must lie in [0, {MAX_MARGIN}]")
            if self.periodic[axis] and self.margin[axis] != 0.0:
                raise ValueError(f"axis {axis}: periodic axes carry no margin")
        return self

    @classmethod
    def box(
        cls,
        sides: Sequence[float],
        resolution: Union[int, Sequence[int]],
        lower: Union[float, Sequence[float]] = 0.0,
    ) -> "ChartGrid":
        """
        Fully periodic box [lower, lower + side) per axis.

        Args:
            sides: Period of each axis
            resolution: Node count (shared or per axis)
            lower: Lower bound (shared or per axis)

        Returns:
            A closed chart
        """
        dim = len(sides)
        res = _per_axis(resolution, dim)
        low = [float(v) for v in _per_axis(lower, dim)]
        return cls(
            dim=dim,
            bounds=[(low[a], low[a] + float(sides[a])) for a in range(dim)],
            resolution=[int(r) for r in res],
            periodic=[True] * dim,
            margin=[0.0] * dim,
        )

    @classmethod
    def lat_long(
        cls,
        dim: int,
        resolution: Union[int, Sequence[int]],
        pole_cut: float,
        margin: float,
    ) -> "ChartGrid":
        """
        Hyperspherical chart (theta_1, ..., theta_{n-1}, phi) of the n-sphere.

        Polar angles run over [pole_cut*pi, pi - pole_cut*pi] with the given
        margin; the azimuth is periodic on [0, 2*pi).
        """
        res = [int(r) for r in _per_axis(resolution, dim)]
        polar = (pole_cut * math.pi, math.pi - pole_cut * math.pi)
        return cls(
            dim=dim,
            bounds=[polar] * (dim - 1) + [(0.0, 2.0 * math.pi)],
            resolution=res,
            periodic=[False] * (dim - 1) + [True],
            margin=[margin] * (dim - 1) + [0.0],
        )

    def with_resolution(self, resolution: Union[int, Sequence[int]]) -> "ChartGrid":
        """Same domain at another node count."""
        return ChartGrid(
            dim=self.dim,
            bounds=list(self.bounds),
            resolution=[int(r) for r in _per_axis(resolution, self.dim)],
            periodic=list(self.periodic),
            margin=list(self.margin),
        )

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(self.resolution)

    @property
    def node_count(self) -> int:
        return int(np.prod(self.resolution))

    @property
    def is_closed(self) -> bool:
        """True when every axis is periodic."""
        return all(self.periodic)

    @property
    def spacing(self) -> Tuple[float, ...]:
        return tuple(
            (hi - lo) / (n if per else n - 1)
            for (lo, hi), n, per in zip(self.bounds, self.resolution, self.periodic)
        )

    @property
    def max_spacing(self) -> float:
        return max(self.spacing)

    @property
    def key(self) -> Tuple:
        """Hashable description of the chart."""
        return (
            tuple(tuple(b) for b in self.bounds),
            tuple(self.resolution),
            tuple(self.periodic),
            tuple(self.margin),
        )

    @property
    def axes(self) -> List[np.ndarray]:
        return list(_axes(self.key))

    @property
    def mesh(self) -> np.ndarray:
        """Node coordinates, shape grid_shape + (dim,)."""
        return _mesh(self.key)

    def node_coordinates(self, node: Sequence[int]) -> np.ndarray:
        if len(node) != self.dim:
            raise ValueError(f"node must have {self.dim} indices")
        return np.array(
            [self.axes[a][int(i)] for a, i in enumerate(node)], dtype=float
        )

    def margin_nodes(self, axis: int) -> int:
        """Number of excluded nodes at each end of an axis."""
        if self.periodic[axis]:
            return 0
        count = self.margin[axis] * (self.resolution[axis] - 1)
        return int(math.ceil(count - 1e-9))

    @property
    def interior_mask(self) -> np.ndarray:
        """Nodes outside every margin."""
        mask = np.ones(self.shape, dtype=bool)
        for axis in range(self.dim):
            cut = self.margin_nodes(axis)
            if cut == 0:
                continue
            index = [slice(None)] * self.dim
            index[axis] = slice(0, cut)
            mask[tuple(index)] = False
            index[axis] = slice(self.resolution[axis] - cut, None)
            mask[tuple(index)] = False
        mask.setflags(write=False)
        return mask

    @property
    def quadrature_weights(self) -> np.ndarray:
        """Product trapezoid weights over all nodes."""
        weights = np.ones(self.shape, dtype=float)
        for axis, (n, h, per) in enumerate(
            zip(self.resolution, self.spacing, self.periodic)
        ):
            w = np.full(n, h)
            if not per:
                w[0] = w[-1] = 0.5 * h
            view = [1] * self.dim
            view[axis] = n
            weights = weights * w.reshape(view)
        weights.setflags(write=False)
        return weights


def _per_axis(value, dim: int) -> List:
    if np.isscalar(value):
        return [value] * dim
    value = list(value)
    if len(value) != dim:
        raise ValueError(f"expected {dim} values, got {len(value)}")
    return value


@lru_cache(maxsize=64)
def _axes(key: Tuple) -> Tuple[np.ndarray, ...]:
    bounds, resolution, periodic, _ = key
    axes = []
    for (lo, hi), n, per in zip(bounds, resolution, periodic):
        h = (hi - lo) / (n if per else n - 1)
        coords = lo + np.arange(n, dtype=float) * h
        coords.setflags(write=False)
        axes.append(coords)
    return tuple(axes)


@lru_cache(maxsize=16)
def _mesh(key: Tuple) -> np.ndarray:
    points = np.stack(np.meshgrid(*_axes(key), indexing="ij"), axis=-1)
    points.setflags(write=False)
    return points
