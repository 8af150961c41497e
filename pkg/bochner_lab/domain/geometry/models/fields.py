"""
Numeric field containers on a chart grid.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Optional, Tuple

import numpy as np

from bochner_lab.core.exceptions import DegenerateMetric, ValidationError
from bochner_lab.domain.geometry.schemas.chart import ChartGrid

if TYPE_CHECKING:
    from bochner_lab.domain.geometry.models.metric_models import MetricModel


class FieldRole(str, Enum):
    """Tagged variants of tensor fields."""

    SCALAR = "scalar"
    ONE_FORM = "one_form"
    VECTOR = "vector"
    SYM2 = "sym2"


VALENCE = {
    FieldRole.SCALAR: (0, 0),
    FieldRole.ONE_FORM: (1, 0),
    FieldRole.VECTOR: (0, 1),
    FieldRole.SYM2: (2, 0),
}


def _frozen(array: np.ndarray) -> np.ndarray:
    out = np.array(array, dtype=float, copy=True)
    out.setflags(write=False)
    return out


def component_shape(role: FieldRole, dim: int) -> Tuple[int, ...]:
    rank = sum(VALENCE[role])
    return (dim,) * rank


@dataclass(frozen=True, eq=False)
class TensorField:
    """
    A tensor field sampled at every node of a chart.

    data has shape chart.shape + component shape; sym2 data is exactly
    symmetric in its two slots.
    """

    chart: ChartGrid
    role: FieldRole
    data: np.ndarray

    def __post_init__(self):
        data = _frozen(self.data)
        expected = self.chart.shape + component_shape(self.role, self.chart.dim)
        if data.shape != expected:
            raise ValidationError(
                f"{self.role.value} field data has shape {data.shape}, expected {expected}"
            )
        if self.role is FieldRole.SYM2 and not np.array_equal(
            data, np.swapaxes(data, -1, -2)
        ):
            raise ValidationError("sym2 field is not exactly symmetric")
        object.__setattr__(self, "data", data)

    @classmethod
    def scalar(cls, chart: ChartGrid, data: np.ndarray) -> "TensorField":
        return cls(chart, FieldRole.SCALAR, data)

    @classmethod
    def one_form(cls, chart: ChartGrid, data: np.ndarray) -> "TensorField":
        return cls(chart, FieldRole.ONE_FORM, data)

    @classmethod
    def vector(cls, chart: ChartGrid, data: np.ndarray) -> "TensorField":
        return cls(chart, FieldRole.VECTOR, data)

    @classmethod
    def sym2(cls, chart: ChartGrid, data: np.ndarray) -> "TensorField":
        """Build a sym2 field, symmetrizing the input."""
        data = np.asarray(data, dtype=float)
        return cls(chart, FieldRole.SYM2, 0.5 * (data + np.swapaxes(data, -1, -2)))

    @classmethod
    def zeros(cls, chart: ChartGrid, role: FieldRole) -> "TensorField":
        return cls(chart, role, np.zeros(chart.shape + component_shape(role, chart.dim)))

    @property
    def valence(self) -> Tuple[int, int]:
        """(covariant rank, contravariant rank)."""
        return VALENCE[self.role]

    @property
    def component_count(self) -> int:
        return int(np.prod(component_shape(self.role, self.chart.dim), dtype=int))

    def __add__(self, other: "TensorField") -> "TensorField":
        self._check_compatible(other)
        return TensorField(self.chart, self.role, self.data + other.data)

    def __sub__(self, other: "TensorField") -> "TensorField":
        self._check_compatible(other)
        return TensorField(self.chart, self.role, self.data - other.data)

    def scaled(self, factor) -> "TensorField":
        """Multiply by a constant or by a scalar field array."""
        factor = np.asarray(factor, dtype=float)
        if factor.ndim:
            factor = factor.reshape(factor.shape + (1,) * sum(self.valence))
        return TensorField(self.chart, self.role, self.data * factor)

    def _check_compatible(self, other: "TensorField") -> None:
        if other.role is not self.role or other.chart != self.chart:
            raise ValidationError("fields live on different charts or roles")


@dataclass(frozen=True, eq=False)
class MetricField:
    """
    Metric components g_ij with inverse and volume density at every node.

    evaluator optionally supplies closed-form derivatives of the metric.
    """

    chart: ChartGrid
    components: np.ndarray
    inverse: np.ndarray
    volume_density: np.ndarray
    evaluator: Optional["MetricModel"] = field(default=None, compare=False)

    @classmethod
    def from_components(
        cls,
        chart: ChartGrid,
        components: np.ndarray,
        evaluator: Optional["MetricModel"] = None,
    ) -> "MetricField":
        """
        Validate metric components and derive inverse and volume density.

        Raises:
            DegenerateMetric: if g is not positive definite at some node
        """
        g = np.asarray(components, dtype=float)
        expected = chart.shape + (chart.dim, chart.dim)
        if g.shape != expected:
            raise ValidationError(f"metric has shape {g.shape}, expected {expected}")
        g = 0.5 * (g + np.swapaxes(g, -1, -2))
        eigenvalues = np.linalg.eigvalsh(g)
        smallest = eigenvalues[..., 0]
        if not np.all(smallest > 0.0):
            node = np.unravel_index(int(np.argmin(smallest)), chart.shape)
            raise DegenerateMetric(
                tuple(int(i) for i in node), float(smallest[node])
            )
        inverse = np.linalg.inv(g)
        # one Newton step pushes g.g^-1 - I to rounding level
        identity = np.eye(chart.dim)
        inverse = inverse + inverse @ (identity - g @ inverse)
        inverse = 0.5 * (inverse + np.swapaxes(inverse, -1, -2))
        volume = np.sqrt(np.linalg.det(g))
        return cls(chart, _frozen(g), _frozen(inverse), _frozen(volume), evaluator)

    @classmethod
    def from_model(cls, chart: ChartGrid, model: "MetricModel") -> "MetricField":
        if model.dim != chart.dim:
            raise ValidationError(
                f"metric model of dimension {model.dim} on a {chart.dim}-dimensional chart"
            )
        return cls.from_components(chart, model.metric(chart.mesh), evaluator=model)

    @property
    def dim(self) -> int:
        return self.chart.dim

    def as_tensor(self) -> TensorField:
        return TensorField(self.chart, FieldRole.SYM2, self.components)


@dataclass(frozen=True, eq=False)
class CurvatureBundle:
    """
    Levi-Civita data on a chart.

    christoffel[..., k, i, j] = Gamma^k_ij; riemann[..., a, b, c, d] = R_abcd.
    constant_curvature is set only when the curvature is known in closed form.
    """

    christoffel: np.ndarray
    riemann: np.ndarray
    ricci: np.ndarray
    scalar: np.ndarray
    mode: str
    order: Optional[int] = None
    constant_curvature: Optional[float] = None

    def __post_init__(self):
        for name in ("christoffel", "riemann", "ricci", "scalar"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    @property
    def certified(self) -> bool:
        return self.constant_curvature is not None


@dataclass(frozen=True)
class CurvatureExtreme:
    """An extreme curvature value with its certification flag."""

    kind: str
    value: float
    certified: bool
