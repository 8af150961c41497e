"""
Catalog repositories.
"""

from bochner_lab.domain.catalog.repositories.catalog_repository import (
    CatalogRepository,
    CatalogSpec,
)

__all__ = ["CatalogRepository", "CatalogSpec"]
