"""
Catalog domain models.
"""

from bochner_lab.domain.catalog.models.entry import CatalogEntry, EntryKind, Reference

__all__ = ["CatalogEntry", "EntryKind", "Reference"]
