"""
Service for the geometry catalog.
"""

import logging
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from pydantic import ValidationError as PydanticValidationError

from bochner_lab.core.config import get_settings
from bochner_lab.core.exceptions import InvalidParameters
from bochner_lab.domain.catalog.models.entry import CatalogEntry, EntryKind, Reference
from bochner_lab.domain.catalog.repositories.catalog_repository import (
    CatalogRepository,
    CatalogSpec,
)
from bochner_lab.domain.catalog.schemas.entry import (
    EntryDescription,
    ReferenceDescription,
    ReferenceReport,
    ReferenceRow,
)
from bochner_lab.domain.catalog.services.builders import resolve_resolution
from bochner_lab.domain.geometry.schemas.chart import MIN_RESOLUTION
from bochner_lab.domain.geometry.services.curvature import (
    build_levi_civita,
    curvature_extremes_field,
)
from bochner_lab.domain.geometry.services.linalg import max_abs
from bochner_lab.domain.geometry.services.tolerance import identity_tolerance
from bochner_lab.domain.maps.services.map_service import energy_density, tension_norm
from bochner_lab.domain.stability.services.stability_service import jacobi_operator
from bochner_lab.domain.submanifolds.services.submanifold_service import (
    principal_curvatures,
    second_fundamental_form,
)

logger = logging.getLogger(__name__)


def _error_text(exc: PydanticValidationError) -> str:
    return "; ".join(
        f"{'.'.join(str(part) for part in err['loc']) or 'params'}: {err['msg']}"
        for err in exc.errors()
    )


class CatalogService:
    """
    Service for building catalog entries and checking their references.
    """

    def __init__(self, repository: Optional[CatalogRepository] = None):
        """
        Initialize the service with a repository.

        Args:
            repository: Catalog repository, the built-in catalog by default
        """
        self.repository = repository or CatalogRepository()

    def list_entries(self) -> List[Dict[str, str]]:
        return [
            {"name": spec.name, "kind": spec.kind.value, "description": spec.description}
            for spec in self.repository.all()
        ]

    def build(
        self,
        name: str,
        params: Optional[Dict[str, Any]] = None,
        resolution: Optional[int] = None,
        order: Optional[int] = None,
    ) -> CatalogEntry:
        """
        Build a named entry.

        Args:
            name: Catalog name
            params: Raw parameter values, defaults for missing keys
            resolution: Nodes per axis, a dimension-dependent default if omitted
            order: Finite-difference order, FD_ORDER if omitted

        Returns:
            CatalogEntry

        Raises:
            UnknownEntry: if the name is not registered
            InvalidParameters: if the parameters fail validation
        """
        spec = self.repository.get(name)
        order = order or get_settings().FD_ORDER
        try:
            validated = spec.params_model(**(params or {}))
            instance, references = spec.builder(validated, resolution, order)
        except PydanticValidationError as exc:
            raise InvalidParameters(f"{name}: {_error_text(exc)}") from exc
        except ValueError as exc:
            raise InvalidParameters(f"{name}: {exc}") from exc
        logger.debug("built %s %s at resolution %s", spec.kind.value, name, resolution)
        return CatalogEntry(
            name=name,
            kind=spec.kind,
            params=validated.model_dump(),
            instance=instance,
            references=references,
            order=order,
        )

    def describe(self, name: str, params: Optional[Dict[str, Any]] = None) -> EntryDescription:
        """Parameter schema and reference table of an entry."""
        spec: CatalogSpec = self.repository.get(name)
        entry = self.build(name, params, MIN_RESOLUTION)
        return EntryDescription(
            name=spec.name,
            kind=spec.kind.value,
            description=spec.description,
            default_resolution=resolve_resolution(None, spec.dim or entry.chart.dim),
            parameters=spec.params_model.model_json_schema(),
            references=[
                ReferenceDescription(
                    quantity=ref.quantity,
                    value=float(ref.expected) if ref.constant else None,
                    provenance=ref.provenance,
                )
                for ref in entry.references
            ],
        )

    def reference_check(
        self, entry: CatalogEntry, resolution: Optional[int] = None
    ) -> ReferenceReport:
        """
        Recompute every reference of an entry numerically.

        Curvatures of manifolds come from finite differences of the sampled
        metric; immersions from the second fundamental form pipeline; maps
        from the energy and tension routines. Deviations are taken over
        non-margin nodes.
        """
        if resolution is not None and resolution != entry.resolution:
            entry = self.build(entry.name, entry.params, resolution, entry.order)
        measure = _measurements(entry)
        chart = entry.chart
        mask = chart.interior_mask
        rows = []
        for ref in entry.references:
            values = measure(ref.quantity)
            deviation = _deviation(values, ref, mask)
            scale = max(1.0, float(np.max(np.abs(ref.expected))))
            tol = identity_tolerance(chart, entry.order, scale=scale)
            rows.append(
                ReferenceRow(
                    quantity=ref.quantity,
                    expected=float(ref.expected) if ref.constant else None,
                    measured_max=_masked_max(np.abs(values), mask),
                    deviation=deviation,
                    tolerance=tol,
                    passes=deviation <= tol,
                    provenance=ref.provenance,
                )
            )
        return ReferenceReport(
            entry=entry.name,
            params=entry.params,
            resolution=entry.resolution,
            order=entry.order,
            rows=rows,
            passes=all(row.passes for row in rows),
        )


def _masked_max(values: np.ndarray, mask: np.ndarray) -> float:
    if values.ndim > mask.ndim:
        values = values.reshape(values.shape[: mask.ndim] + (-1,)).max(axis=-1)
    return max_abs(values, mask)


def _deviation(values: np.ndarray, ref: Reference, mask: np.ndarray) -> float:
    expected = np.broadcast_to(ref.expected, values.shape)
    deviation = _masked_max(values - expected, mask)
    if not ref.signed:
        flipped = np.sort(-values, axis=-1) if values.ndim > mask.ndim else -values
        deviation = min(deviation, _masked_max(flipped - expected, mask))
    return deviation


def _measurements(entry: CatalogEntry) -> Callable[[str], np.ndarray]:
    """Quantity name -> measured per-node array, with shared intermediate results."""
    cache: Dict[str, Any] = {}
    inst = entry.instance

    def curvature():
        if "curv" not in cache:
            cache["curv"] = build_levi_civita(inst.metric, "finite_difference", entry.order)
        return cache["curv"]

    def second_fundamental():
        if "data" not in cache:
            cache["data"] = second_fundamental_form(inst)
        return cache["data"]

    def measure(quantity: str) -> np.ndarray:
        if entry.kind is EntryKind.MANIFOLD:
            curv = curvature()
            if quantity == "scalar":
                return curv.scalar
            return curvature_extremes_field(curv, inst.metric, quantity)[0]
        if entry.kind is EntryKind.IMMERSION:
            data = second_fundamental()
            if quantity == "phi_norm_sq":
                return data.phi_norm_sq
            if quantity == "mean_curvature":
                return data.scalar_mean_curvature
            if quantity == "principal_curvatures":
                return principal_curvatures(data)
            if quantity == "normal_ricci":
                return jacobi_operator(inst, data).normal_ricci
        if entry.kind is EntryKind.MAP:
            if quantity == "energy_density":
                return energy_density(inst).data
            if quantity == "tension_norm":
                return tension_norm(inst)
        raise InvalidParameters(f"no measurement of '{quantity}' for a {entry.kind.value}")

    return measure


_default_service: Optional[CatalogService] = None


def get_catalog_service() -> CatalogService:
    global _default_service
    if _default_service is None:
        _default_service = CatalogService()
    return _default_service


def build(
    name: str,
    params: Optional[Dict[str, Any]] = None,
    resolution: Optional[int] = None,
    order: Optional[int] = None,
) -> CatalogEntry:
    """Build a named entry with the built-in catalog."""
    return get_catalog_service().build(name, params, resolution, order)


def reference_check(entry: CatalogEntry, resolution: Optional[int] = None) -> ReferenceReport:
    """Recompute the references of an entry with the built-in catalog."""
    return get_catalog_service().reference_check(entry, resolution)
