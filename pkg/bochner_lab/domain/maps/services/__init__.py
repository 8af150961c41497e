"""
Maps services.
"""

from bochner_lab.domain.maps.services.map_service import (
    check_hypotheses_2_3,
    dirichlet_energy,
    eells_sampson_check,
    energy_density,
    hessian_norm_sq,
    integral_q_check,
    is_harmonic,
    map_hessian,
    phi_tensor,
    pullback_metric,
    q_bound_check,
    q_eigenframe_identity,
    q_lower_bound,
    q_term,
    tension_field,
    tension_norm,
    trace_energy,
    weitzenboeck_residual,
)

__all__ = [
    "check_hypotheses_2_3",
    "dirichlet_energy",
    "eells_sampson_check",
    "energy_density",
    "hessian_norm_sq",
    "integral_q_check",
    "is_harmonic",
    "map_hessian",
    "phi_tensor",
    "pullback_metric",
    "q_bound_check",
    "q_eigenframe_identity",
    "q_lower_bound",
    "q_term",
    "tension_field",
    "tension_norm",
    "trace_energy",
    "weitzenboeck_residual",
]
