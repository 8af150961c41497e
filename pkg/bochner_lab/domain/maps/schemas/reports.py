"""
Pydantic schemas for map analysis reports.
"""

from typing import Literal

from pydantic import BaseModel, Field

from bochner_lab.domain.geometry.schemas.report import FieldReport


class EnergyReport(FieldReport):
    """Dirichlet energy in both normalizations."""

    integral_e: float = Field(..., description="Integral of e(f) dv_g")
    half_integral_e: float = Field(..., description="1/2 integral of e(f) dv_g")
    integral_trace: float = Field(..., description="Integral of trace_g(f*h) dv_g")
    finite: bool


class HarmonicityReport(FieldReport):
    """Max tension norm over non-margin nodes against a tolerance."""

    harmonic: bool
    max_tension: float
    tolerance: float


class WeitzenboeckReport(FieldReport):
    """Residual of Delta e(f) = |Ddf|^2 + Q(f)."""

    max_abs: float
    l2: float
    max_tension: float
    harmonic: bool
    informational: bool = Field(
        ..., description="True when the input is not harmonic within tolerance"
    )


class QEigenframeReport(FieldReport):
    """Both sides of the eigenframe form of the codomain curvature term."""

    max_residual: float
    scale: float


class QBoundReport(FieldReport):
    """Q(f) against the eigenvalue lower bound B."""

    min_gap: float = Field(..., description="min(Q - B) over certified nodes")
    holds: bool
    certified_nodes: int
    uncertified_nodes: int
    equality_max: float = Field(..., description="max |Q - B| over certified nodes")


class HypothesisVariant(BaseModel):
    """One energy normalization of the curvature hypotheses."""

    normalization: Literal["half_trace", "trace"]
    energy_condition: bool = Field(..., description="sec_min * e <= Ric_min at every node")
    curvature_condition: bool = Field(
        ..., description="sec_min >= Ric_max / m (strict: >) at every node"
    )
    passes: bool
    failing_nodes: int
    worst_energy_margin: float
    worst_curvature_margin: float


class HypothesisReport(FieldReport):
    """Curvature hypotheses of the energy vanishing theorem."""

    strict: bool
    passes: bool
    energy_normalization: Literal["half_trace", "trace"]
    half_trace: HypothesisVariant
    trace: HypothesisVariant
    double_inequality: bool = Field(
        ..., description="(m-1) sec_min <= Ric <= m sec_min on the image"
    )
    ricci_energy_bound: bool = Field(
        ..., description="Ric_min >= e(f) Ric_max / m >= 0 at every node"
    )
    certified: bool
    tolerance: float


class EellsSampsonReport(FieldReport):
    """Ric >= 0 on the domain and sec <= 0 on the image imply Q >= 0."""

    hypotheses_hold: bool
    min_ricci: float
    max_image_sectional: float
    min_q: float
    conclusion_holds: bool
    certified: bool


class IntegralQReport(FieldReport):
    """Integral form of the Bochner identity for harmonic maps."""

    integral_q: float
    integral_hessian_sq: float
    integral_sum: float
    tolerance: float
    max_tension: float
    harmonic: bool
    verdict: bool
    approximate: bool = Field(
        ..., description="True when the chart is closed only up to pole caps"
    )
