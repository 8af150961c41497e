"""
Catalog domain schemas.
"""

from bochner_lab.domain.catalog.schemas.entry import (
    EntryDescription,
    ReferenceDescription,
    ReferenceReport,
    ReferenceRow,
)
from bochner_lab.domain.catalog.schemas.parameters import EntryParams

__all__ = [
    "EntryDescription",
    "EntryParams",
    "ReferenceDescription",
    "ReferenceReport",
    "ReferenceRow",
]
