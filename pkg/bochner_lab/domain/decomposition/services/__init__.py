"""
Decomposition services.
"""

from bochner_lab.domain.decomposition.services.ahlfors import (
    ahlfors_laplacian,
    assemble_deformation,
    cauchy_ahlfors,
    codifferential,
    delta_star,
    tensor_mass,
)
from bochner_lab.domain.decomposition.services.conjugate_gradient import ConjugateGradient
from bochner_lab.domain.decomposition.services.decomposition_service import (
    check_3_8_and_3_9,
    decomposition_report,
    detect_kernel,
    solve_decomposition,
)

__all__ = [
    "ConjugateGradient",
    "ahlfors_laplacian",
    "assemble_deformation",
    "cauchy_ahlfors",
    "check_3_8_and_3_9",
    "codifferential",
    "decomposition_report",
    "delta_star",
    "detect_kernel",
    "solve_decomposition",
    "tensor_mass",
]
