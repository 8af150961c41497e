"""
Stability services.
"""

from bochner_lab.domain.stability.services.stability_service import (
    jacobi_apply,
    jacobi_operator,
    pairing_defect,
    rigidity_report,
    stability_spectrum,
    superharmonic_check,
    weak_jacobi,
)

__all__ = [
    "jacobi_apply",
    "jacobi_operator",
    "pairing_defect",
    "rigidity_report",
    "stability_spectrum",
    "superharmonic_check",
    "weak_jacobi",
]
