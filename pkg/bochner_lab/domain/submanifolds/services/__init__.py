"""
Submanifolds services.
"""

from bochner_lab.domain.submanifolds.services.submanifold_service import (
    classify,
    clifford_constants_check,
    cmc_lp_rigidity_check,
    codazzi_residual,
    gauss_consistency_check,
    gauss_curvature,
    induced_christoffel,
    is_parallel,
    normal_connection,
    normal_frame,
    normal_frame_defect,
    pinching_check,
    principal_curvatures,
    second_fundamental_form,
    shape_operator_defect,
    simons_residual,
    traceless_part,
    vdwb_derivative,
)

__all__ = [
    "classify",
    "clifford_constants_check",
    "cmc_lp_rigidity_check",
    "codazzi_residual",
    "gauss_consistency_check",
    "gauss_curvature",
    "induced_christoffel",
    "is_parallel",
    "normal_connection",
    "normal_frame",
    "normal_frame_defect",
    "pinching_check",
    "principal_curvatures",
    "second_fundamental_form",
    "shape_operator_defect",
    "simons_residual",
    "traceless_part",
    "vdwb_derivative",
]
