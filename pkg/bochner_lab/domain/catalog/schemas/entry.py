"""
Pydantic schemas describing catalog entries and reference checks.
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class ReferenceDescription(BaseModel):
    quantity: str
    value: Optional[float] = Field(None, description="Constant value; None for a field reference")
    provenance: str


class EntryDescription(BaseModel):
    """Public description of a catalog entry."""

    name: str
    kind: str
    description: str
    default_resolution: int
    parameters: Dict[str, Any] = Field(..., description="JSON schema of the parameters")
    references: List[ReferenceDescription] = Field(default_factory=list)


class ReferenceRow(BaseModel):
    quantity: str
    expected: Optional[float]
    measured_max: float = Field(..., description="Largest |measured| over non-margin nodes")
    deviation: float
    tolerance: float
    passes: bool
    provenance: str


class ReferenceReport(BaseModel):
    """Every reference of an entry recomputed at one resolution."""

    entry: str
    params: Dict[str, Any]
    resolution: int
    order: int
    rows: List[ReferenceRow]
    passes: bool
