from bochner_lab.domain.checks.schemas.report import (
    EXIT_CODES,
    GeometrySpec,
    ResolutionRow,
    VerificationReport,
    report_json_schema,
    verdict_for,
)
from bochner_lab.domain.checks.schemas.run_config import RunConfig

__all__ = [
    "EXIT_CODES",
    "GeometrySpec",
    "ResolutionRow",
    "RunConfig",
    "VerificationReport",
    "report_json_schema",
    "verdict_for",
]
