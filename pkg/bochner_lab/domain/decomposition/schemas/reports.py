"""
Pydantic schemas for decomposition reports.
"""

from pydantic import Field

from bochner_lab.domain.geometry.schemas.report import FieldReport

SCALING_NOTE = (
    "decomposition anchored on phi = (1/2 L_xi g + lambda g) + phi_TT; with S theta = "
    "L_xi g + (2/n) delta theta g this gives phi0 = 1/2 S theta + phi_TT and "
    "S*S theta = 4 delta phi0"
)


class DecompositionReport(FieldReport):
    """Invariants of an L2-orthogonal decomposition."""

    trace_max: float = Field(..., description="max |trace_g phi_TT|")
    weak_divergence: float = Field(
        ..., description="Relative residual of the discrete orthogonality conditions"
    )
    strong_divergence_max: float = Field(..., description="max |delta phi_TT|_g")
    reconstruction_l2: float
    orthogonality: float = Field(..., description="|<1/2 L_xi g + lambda g, phi_TT>|")
    theta_l2: float
    lambda_mean: float
    tt_l2: float
    passes: bool
    tolerance: float


class IntegralFormulaReport(FieldReport):
    """Divergence identity of the traceless part and the integral formula."""

    divergence_lhs_max: float = Field(..., description="max |delta phi0|_g")
    divergence_rhs_max: float = Field(..., description="max |(n-1) dH|_g")
    divergence_residual_max: float
    ahlfors_norm_sq: float = Field(..., description="<S theta, S theta>")
    lie_mean_integral: float = Field(..., description="integral of L_xi H dv_g")
    formula_rhs: float = Field(..., description="-(n-1) integral of L_xi H dv_g")
    scale_factor: float = Field(
        ..., description="Factor c with <S theta, S theta> = c * formula_rhs"
    )
    difference: float
    integral_tolerance: float
    divergence_tolerance: float
    formula_holds: bool
    divergence_holds: bool
    lie_integral_vanishes: bool
    ahlfors_vanishes: bool
    mean_curvature_constant: bool
    umbilic_split_residual: float = Field(..., description="||phi - H g - phi_TT||_L2")
    traceless_codazzi_max: float
    traceless_is_tt_codazzi: bool
    branch_consistent: bool
