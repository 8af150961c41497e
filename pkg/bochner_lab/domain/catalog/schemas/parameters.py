"""
Parameter schemas of catalog entries.
"""

import math
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

ManifoldName = Literal["flat_torus", "round_sphere", "product_sphere"]


class EntryParams(BaseModel):
    """Base class; unknown keys are rejected."""

    model_config = ConfigDict(extra="forbid", frozen=True)


class FlatTorusParams(EntryParams):
    n: int = Field(2, ge=1, le=4, description="Dimension")
    sides: Optional[List[float]] = Field(None, description="Periods, 2*pi by default")

    @model_validator(mode="after")
    def check_sides(self) -> "FlatTorusParams":
        if self.sides is not None:
            if len(self.sides) != self.n:
                raise ValueError(f"sides needs {self.n} entries")
            if any(s <= 0 for s in self.sides):
                raise ValueError("sides must be positive")
        return self

    @property
    def periods(self) -> List[float]:
        return list(self.sides) if self.sides is not None else [2.0 * math.pi] * self.n


class RoundSphereParams(EntryParams):
    n: int = Field(2, ge=2, le=4)
    r: float = Field(1.0, gt=0.0, description="Radius")


class ProductSphereParams(EntryParams):
    r1: float = Field(1.0, gt=0.0, description="Radius of the first S^2")
    r2: float = Field(2.0, gt=0.0, description="Radius of the second S^2")


class CliffordTorusParams(EntryParams):
    n1: int = Field(1, ge=1)
    n2: int = Field(1, ge=1)
    codimension: Literal[1, 2] = Field(
        1, description="1: in S^(n+1); 2: through a totally geodesic S^(n+1) in S^(n+2)"
    )

    @model_validator(mode="after")
    def check_dimension(self) -> "CliffordTorusParams":
        if self.n1 + self.n2 > 4:
            raise ValueError("n1 + n2 must not exceed 4")
        return self


class EquatorParams(EntryParams):
    n: int = Field(2, ge=2, le=3)


class RoundSphereInFlatParams(EntryParams):
    n: int = Field(2, ge=2, le=3)
    r: float = Field(1.0, gt=0.0)


class FlatSubtorusParams(EntryParams):
    z0: float = Field(0.0, description="Height of the slice")


class GraphHypersurfaceParams(EntryParams):
    epsilon: float = Field(0.1, ge=-1.0, le=1.0, description="Amplitude of epsilon sin x cos y")


class IdentityMapParams(EntryParams):
    manifold: ManifoldName = "round_sphere"
    manifold_params: Dict[str, Any] = Field(default_factory=dict)


class ConstantMapParams(EntryParams):
    manifold: ManifoldName = "round_sphere"
    manifold_params: Dict[str, Any] = Field(default_factory=dict)
    point: Optional[List[float]] = Field(None, description="Image point, chart centre by default")


class LinearTorusMapParams(EntryParams):
    matrix: List[List[int]] = Field(
        default_factory=lambda: [[2, 0], [0, 1]], description="Integer matrix A of x -> A x"
    )

    @field_validator("matrix")
    @classmethod
    def check_square(cls, value: List[List[int]]) -> List[List[int]]:
        if not value or any(len(row) != len(value) for row in value):
            raise ValueError("matrix must be square")
        if len(value) > 3:
            raise ValueError("matrix dimension must not exceed 3")
        return value


class CircleToSphereParams(EntryParams):
    theta0: float = Field(math.pi / 2, gt=0.0, lt=math.pi, description="Polar angle of the circle")


class EquatorMapParams(EntryParams):
    n: int = Field(2, ge=2, le=3)
