"""
Pydantic schemas for stability reports.
"""

from typing import List, Optional

from pydantic import Field

from bochner_lab.domain.geometry.schemas.report import FieldReport


class StabilitySpectrumReport(FieldReport):
    """Largest eigenvalues of the Jacobi operator."""

    eigenvalues: List[float] = Field(..., description="Descending")
    lambda_max: float
    stable: bool = Field(..., description="lambda_max <= tolerance")
    tolerance: float
    laplacian_top: float = Field(..., description="Largest eigenvalue of the discrete Laplacian")
    potential_min: float
    potential_max: float
    ricci_negative: bool = Field(..., description="Ric-bar(N, N) < 0 at some node")
    minimal: bool
    top_mode_variation: float = Field(
        ..., description="(max - min) / max |u| of the top eigenfunction"
    )
    consistent: bool = Field(
        ..., description="No sampled mode has Lu > 0 everywhere when stable"
    )


class SuperharmonicReport(FieldReport):
    """Pointwise chain 1/2 Delta u^2 = ||du||^2 + u Delta u for a zero-free u."""

    min_abs_u: float
    zero_threshold: float = Field(..., description="|u| at or below this counts as a zero")
    identity_residual: float = Field(..., description="max |1/2 Delta u^2 - ||du||^2 - u Delta u|")
    max_jacobi: float = Field(..., description="max L u after orienting u positive")
    jacobi_tolerance: float
    hypothesis_holds: bool = Field(..., description="L u <= jacobi_tolerance at every node")
    inequality_residual: Optional[float] = Field(
        None, description="max (1/2 Delta u^2 - ||du||^2 + V u^2), set when the hypothesis holds"
    )
    inequality_holds: Optional[bool] = None
    max_laplacian_sq: float = Field(..., description="max Delta(u^2)")
    superharmonic: bool
    ricci_nonnegative: bool
    tolerance: float


class RigidityReport(FieldReport):
    """Conclusion pair of the rigidity theorem for a constant test function."""

    u_constant: bool
    u_variation: float
    zero_free: bool
    l1_norm: float = Field(..., description="integral of |u| dv_g, finite on compact grids")
    max_phi_norm: float
    max_normal_ricci: float
    potential_max: float
    hypothesis_holds: bool = Field(..., description="u constant, zero-free and L u <= 0")
    totally_geodesic: bool
    ricci_vanishes: bool
    conclusion_holds: bool
    consistent: bool
    tolerance: float
