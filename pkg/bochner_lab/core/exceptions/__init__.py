from bochner_lab.core.exceptions.base import (
    AmbientNotSpaceForm,
    BochnerLabError,
    DegenerateImmersion,
    DegenerateMetric,
    DegeneratePlane,
    HypersurfaceOnly,
    InvalidExponent,
    InvalidParameters,
    NotClosedManifold,
    SolverDiverged,
    StencilOutOfDomain,
    UnknownCheck,
    UnknownEntry,
    ValidationError,
    ZeroCrossing,
)
from bochner_lab.core.exceptions.handlers import (
    handle_exception,
    register_exception_handlers,
)

__all__ = [
    "AmbientNotSpaceForm",
    "BochnerLabError",
    "DegenerateImmersion",
    "DegenerateMetric",
    "DegeneratePlane",
    "HypersurfaceOnly",
    "InvalidExponent",
    "InvalidParameters",
    "NotClosedManifold",
    "SolverDiverged",
    "StencilOutOfDomain",
    "UnknownCheck",
    "UnknownEntry",
    "ValidationError",
    "ZeroCrossing",
    "handle_exception",
    "register_exception_handlers",
]
