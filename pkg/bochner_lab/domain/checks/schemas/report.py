"""
Pydantic schemas for verification reports.
"""

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field

Verdict = Literal["pass", "fail", "informational", "error"]

EXIT_CODES = {"pass": 0, "informational": 0, "fail": 2}


class GeometrySpec(BaseModel):
    """A catalog name with its raw parameters."""

    name: str
    params: Dict[str, Any] = Field(default_factory=dict)

    def label(self) -> str:
        if not self.params:
            return self.name
        inner = ",".join(f"{key}={self.params[key]}" for key in sorted(self.params))
        return f"{self.name}({inner})"


class ResolutionRow(BaseModel):
    """Residuals of one run inside a convergence study."""

    resolution: int
    spacing: float
    residuals: Dict[str, float]
    verdict: Verdict


class VerificationReport(BaseModel):
    """
    Outcome of one check on one geometry.

    verdict is pass iff every residual is within its tolerance, unless the
    check downgraded itself to informational or raised an error.
    """

    check_id: str
    geometry: GeometrySpec
    resolutions: List[int] = Field(default_factory=list)
    order: Optional[int] = None
    residuals: Dict[str, float] = Field(default_factory=dict)
    tolerances: Dict[str, float] = Field(default_factory=dict)
    details: Dict[str, Any] = Field(
        default_factory=dict, description="Non-residual outputs of the check"
    )
    convergence_order: Optional[float] = None
    decay_residual: Optional[str] = Field(
        None, description="Residual whose refinement order was fitted"
    )
    table: List[ResolutionRow] = Field(default_factory=list)
    verdict: Verdict
    provenance_notes: List[str] = Field(default_factory=list)
    error: Optional[Dict[str, Any]] = None
    exit_code: int = 0

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


def verdict_for(
    residuals: Dict[str, float], tolerances: Dict[str, float], informational: bool = False
) -> Verdict:
    if informational:
        return "informational"
    within = all(residuals[name] <= tolerances[name] for name in residuals)
    return "pass" if within else "fail"


def report_json_schema() -> Dict[str, Any]:
    """JSON schema every emitted report validates against."""
    return VerificationReport.model_json_schema()
