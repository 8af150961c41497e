"""
Pydantic schemas for submanifold analysis reports.
"""

from typing import Dict, List, Literal, Optional

from pydantic import Field

from bochner_lab.domain.geometry.schemas.report import FieldReport


class PinchingReport(FieldReport):
    """||phi||^2 against the pinching bound kn/(2k-1) C."""

    bound: float
    max_norm_sq: float
    min_norm_sq: float
    below_bound: bool
    constant: bool
    equality_case: bool
    totally_geodesic: bool
    minimal: bool
    max_mean_curvature: float
    parallel: bool
    max_vdwb_norm: float
    branch: Literal["totally_geodesic", "equality", "below_bound", "above_bound"]
    tolerance: float


class SimonsReport(FieldReport):
    """Residual of the Simons-type formula for minimal submanifolds."""

    max_abs: float
    min_residual: float
    l2: float
    max_mean_curvature: float
    minimal: bool
    informational: bool = Field(
        ..., description="True for non-minimal input or codimension >= 2"
    )
    passes: bool
    tolerance: float
    minimal_tolerance: float
    terms: Dict[str, float] = Field(
        default_factory=dict, description="Max absolute value of each term"
    )
    decay_order: Optional[float] = Field(
        None, description="Fitted refinement order, set by convergence studies"
    )


class CodazziReport(FieldReport):
    """Codazzi equations and the divergence identities of a hypersurface."""

    codazzi_max: float
    divergence_max: Optional[float] = Field(
        None, description="max |delta phi + n dH|_g (hypersurfaces)"
    )
    traceless_divergence_max: Optional[float] = Field(
        None, description="max |delta phi0 + (n-1) dH|_g (hypersurfaces)"
    )
    delta_phi_max: Optional[float] = None
    n_dh_max: Optional[float] = None
    passes: bool
    tolerance: float


class CliffordConstantsReport(FieldReport):
    """Principal-curvature constants of a generalized Clifford product."""

    n1: int
    n2: int
    lambda_1: float
    lambda_2: float
    trace_identity: float = Field(..., description="n1 l1 + n2 l2")
    square_identity: float = Field(..., description="n1 l1^2 + n2 l2^2 - n")
    identities_hold: bool
    numeric_deviation: Optional[float] = Field(
        None, description="max deviation of numeric principal curvatures, up to sign"
    )
    numeric_match: Optional[bool] = None
    tolerance: float


class ClassificationReport(FieldReport):
    """Geometric type of an immersion with the residual behind each flag."""

    totally_geodesic: bool
    totally_umbilical: bool
    minimal: bool
    cmc: bool
    generic: bool
    residuals: Dict[str, float]
    tolerance: float

    @property
    def labels(self) -> List[str]:
        names = ("totally_geodesic", "totally_umbilical", "minimal", "cmc", "generic")
        return [name for name in names if getattr(self, name)]


class GaussConsistencyReport(FieldReport):
    """Gauss-formula geometry against finite differences of the induced metric."""

    christoffel_max: float
    riemann_max: float
    passes: bool
    tolerance: float


class CmcRigidityReport(FieldReport):
    """
    Non-negatively curved constant-mean-curvature hypersurfaces with
    L^p-integrable second fundamental form are totally geodesic.
    """

    p: float
    lp_norm: float
    applicable: bool = Field(
        ..., description="The chart covers a complete non-compact manifold"
    )
    lp_finite: bool = Field(..., description="The L^p norm over the chart is finite")
    cover_integrable: bool = Field(
        ..., description="The L^p norm over the fundamental domain vanishes within cover_tolerance"
    )
    cover_tolerance: float
    min_sectional: float
    nonnegative_sectional: bool
    cmc: bool
    hypotheses_hold: bool
    totally_geodesic: bool
    consistent: bool
    tolerance: float
