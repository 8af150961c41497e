"""
Result container of the L2-orthogonal decomposition.
"""

from dataclasses import dataclass

from bochner_lab.domain.decomposition.schemas.solver import SolverStats
from bochner_lab.domain.geometry.models.fields import TensorField


@dataclass(frozen=True, eq=False)
class DecompositionResult:
    """
    phi = (gauge_part + lambda_field g) + tt_part with gauge_part = 1/2 L_xi g,
    xi the vector dual to theta.
    """

    theta: TensorField
    lambda_field: TensorField
    tt_part: TensorField
    gauge_part: TensorField
    solver_stats: SolverStats
