"""
Dispatch of verification checks and grid-refinement convergence studies.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import numpy as np

from bochner_lab.core.exceptions import InvalidParameters, register_exception_handlers
from bochner_lab.core.middleware import setup_middleware
from bochner_lab.domain.catalog.services.catalog_service import CatalogService, get_catalog_service
from bochner_lab.domain.checks.models.check import CheckDefinition, CheckOutcome
from bochner_lab.domain.checks.repositories.check_repository import CheckRepository
from bochner_lab.domain.checks.schemas.report import (
    EXIT_CODES,
    GeometrySpec,
    ResolutionRow,
    VerificationReport,
    verdict_for,
)
from bochner_lab.domain.checks.schemas.run_config import RunConfig

logger = logging.getLogger(__name__)

GeometryLike = Union[GeometrySpec, str, Dict[str, Any]]
RESIDUAL_FLOOR = 1e-300


def as_geometry(geometry: GeometryLike) -> GeometrySpec:
    if isinstance(geometry, GeometrySpec):
        return geometry
    if isinstance(geometry, str):
        return GeometrySpec(name=geometry)
    return GeometrySpec(**geometry)


def plain(value: Any) -> Any:
    """Recursively convert numpy scalars and arrays to JSON-ready values."""
    if isinstance(value, dict):
        return {str(key): plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(item) for item in value]
    if isinstance(value, np.ndarray):
        return plain(value.tolist())
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def fit_order(spacings: List[float], residuals: List[float]) -> float:
    """Least-squares slope of log(residual) against log(h)."""
    x = np.log(np.asarray(spacings, dtype=float))
    y = np.log(np.maximum(np.asarray(residuals, dtype=float), RESIDUAL_FLOOR))
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


class CheckDispatcher:
    """
    Runs registered checks on catalog geometries.

    Middleware wraps the runner as middleware(runner); errors raised inside a
    run go through error_handler and are serialized into the report.
    """

    def __init__(
        self,
        repository: Optional[CheckRepository] = None,
        catalog: Optional[CatalogService] = None,
    ):
        """
        Initialize the dispatcher.

        Args:
            repository: Check registry, the built-in checks by default
            catalog: Catalog service resolving geometries
        """
        self.repository = repository or CheckRepository()
        self.catalog = catalog or get_catalog_service()
        self.error_handler: Optional[Callable[[Exception], Tuple[Dict[str, Any], int]]] = None
        self._runner: Callable[..., VerificationReport] = self._run

    def add_middleware(self, middleware_class, **options) -> None:
        self._runner = middleware_class(self._runner, **options)

    def dispatch(
        self, check_id: str, geometry: GeometryLike, config: Optional[RunConfig] = None
    ) -> VerificationReport:
        return self._runner(check_id, as_geometry(geometry), config or RunConfig.from_settings())

    def study(
        self, check_id: str, geometry: GeometryLike, config: Optional[RunConfig] = None
    ) -> VerificationReport:
        return self._runner(
            check_id, as_geometry(geometry), config or RunConfig.from_settings(), study=True
        )

    def _run(
        self, check_id: str, geometry: GeometrySpec, config: RunConfig, study: bool = False
    ) -> VerificationReport:
        try:
            if study:
                return self._study(check_id, geometry, config)
            return self._single(check_id, geometry, config)
        except Exception as exc:
            if self.error_handler is None:
                raise
            payload, exit_code = self.error_handler(exc)
            logger.debug("%s on %s raised %s", check_id, geometry.label(), payload["code"])
            return VerificationReport(
                check_id=check_id,
                geometry=geometry,
                resolutions=config.resolutions if study else _listed(config.resolution),
                order=config.order,
                verdict="error",
                error=payload,
                exit_code=exit_code,
            )

    def _execute(
        self, definition: CheckDefinition, geometry: GeometrySpec, config: RunConfig
    ) -> Tuple[CheckOutcome, int, float]:
        entry = self.catalog.build(geometry.name, geometry.params, config.resolution, config.order)
        if entry.kind not in definition.kinds:
            kinds = ", ".join(sorted(kind.value for kind in definition.kinds))
            raise InvalidParameters(
                f"check '{definition.check_id}' applies to {kinds}, "
                f"'{geometry.name}' is a {entry.kind.value}"
            )
        outcome = definition.runner(entry, config)
        return outcome, entry.resolution, entry.chart.max_spacing

    def _single(self, check_id: str, geometry: GeometrySpec, config: RunConfig) -> VerificationReport:
        definition = self.repository.get(check_id)
        outcome, resolution, _ = self._execute(definition, geometry, config)
        verdict = verdict_for(outcome.residuals, outcome.tolerances, outcome.informational)
        return VerificationReport(
            check_id=check_id,
            geometry=geometry,
            resolutions=[resolution],
            order=config.order,
            residuals=outcome.residuals,
            tolerances=outcome.tolerances,
            details=plain(outcome.details),
            decay_residual=outcome.decay or definition.decay,
            verdict=verdict,
            provenance_notes=_provenance(outcome, config),
            exit_code=EXIT_CODES[verdict],
        )

    def _study(self, check_id: str, geometry: GeometrySpec, config: RunConfig) -> VerificationReport:
        definition = self.repository.get(check_id)
        resolutions = list(config.resolutions)
        if len(resolutions) < 3:
            raise InvalidParameters("a convergence study needs at least 3 resolutions")
        if any(b <= a for a, b in zip(resolutions, resolutions[1:])):
            raise InvalidParameters("study resolutions must be strictly increasing")
        if any(b != 2 * a for a, b in zip(resolutions, resolutions[1:])):
            logger.warning("study resolutions %s are not dyadic", resolutions)

        def run(resolution: int):
            return self._execute(definition, geometry, config.at_resolution(resolution))

        workers = min(config.threads, len(resolutions))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            runs = list(pool.map(run, resolutions))

        finest, _, _ = runs[-1]
        decay = finest.decay or definition.decay
        if decay is None:
            raise InvalidParameters(f"check '{check_id}' has no decaying residual to study")
        table = [
            ResolutionRow(
                resolution=resolution,
                spacing=spacing,
                residuals=outcome.residuals,
                verdict=verdict_for(outcome.residuals, outcome.tolerances, outcome.informational),
            )
            for outcome, resolution, spacing in runs
        ]
        spacings = [row.spacing for row in table]
        values = [row.residuals[decay] for row in table]
        slope = fit_order(spacings, values)
        at_floor = values[-1] <= config.machine_floor
        within = abs(slope - config.order) <= config.order_window
        verdict = "pass" if (at_floor or within) else "fail"

        notes = _provenance(finest, config)
        if at_floor:
            notes.append("residual at machine floor; order check skipped")
        logger.debug("%s on %s: fitted order %.3f from %s", check_id, geometry.label(), slope, values)
        details = plain(finest.details)
        details["order_target"] = config.order
        details["order_window"] = config.order_window
        return VerificationReport(
            check_id=check_id,
            geometry=geometry,
            resolutions=[row.resolution for row in table],
            order=config.order,
            residuals=finest.residuals,
            tolerances=finest.tolerances,
            details=details,
            convergence_order=slope if math.isfinite(slope) else None,
            decay_residual=decay,
            table=table,
            verdict=verdict,
            provenance_notes=notes,
            exit_code=EXIT_CODES[verdict],
        )


def _listed(resolution: Optional[int]) -> List[int]:
    return [] if resolution is None else [resolution]


def _provenance(outcome: CheckOutcome, config: RunConfig) -> List[str]:
    notes = list(dict.fromkeys(outcome.notes))
    notes.append(f"central differences of order {config.order}")
    if config.tol is not None:
        notes.append(f"tolerance overridden to {config.tol:.3e}")
    if config.strict:
        notes.append("strict hypotheses")
    return notes


def create_dispatcher(
    repository: Optional[CheckRepository] = None, catalog: Optional[CatalogService] = None
) -> CheckDispatcher:
    """
    Create and configure a check dispatcher.

    Returns:
        CheckDispatcher with error handling and middleware installed
    """
    dispatcher = CheckDispatcher(repository, catalog)
    register_exception_handlers(dispatcher)
    setup_middleware(dispatcher)
    return dispatcher


_default_dispatcher: Optional[CheckDispatcher] = None


def get_dispatcher() -> CheckDispatcher:
    global _default_dispatcher
    if _default_dispatcher is None:
        _default_dispatcher = create_dispatcher()
    return _default_dispatcher


def run_check(
    check_id: str, geometry: GeometryLike, config: Optional[RunConfig] = None
) -> VerificationReport:
    """
    Run one check at one resolution.

    Exit codes: 0 pass or informational, 2 fail or module error, 3 solver
    error, 4 unknown names or invalid parameters.
    """
    return get_dispatcher().dispatch(check_id, geometry, config)


def convergence_study(
    check_id: str,
    geometry: GeometryLike,
    resolutions: Optional[List[int]] = None,
    config: Optional[RunConfig] = None,
) -> VerificationReport:
    """
    Run a check over increasing resolutions and fit the decay order.

    Passes iff the fitted order lies within ORDER_WINDOW of the stencil
    order, or the finest residual sits at the machine floor. Resolutions
    run concurrently on up to THREADS workers; the table keeps input order.
    """
    config = config or RunConfig.from_settings()
    if resolutions is not None:
        config = config.model_copy(update={"resolutions": list(resolutions)})
    return get_dispatcher().study(check_id, geometry, config)
