"""
Base schema for numerical reports.
"""

from typing import Any, Dict, List

from pydantic import BaseModel, ConfigDict, Field


class FieldReport(BaseModel):
    """
    Scalar results of a numerical operation.

    Per-node arrays travel in `fields` and are excluded from serialization.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    notes: List[str] = Field(default_factory=list, description="Provenance notes")
    fields: Dict[str, Any] = Field(
        default_factory=dict, exclude=True, description="Per-node arrays"
    )
