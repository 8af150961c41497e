"""
Solver configuration and statistics.
"""

from typing import Literal, Optional

from pydantic import BaseModel, Field

from bochner_lab.core.config import get_settings


class SolverConfig(BaseModel):
    """Conjugate-gradient and kernel-detection parameters."""

    rtol: float = Field(1e-8, gt=0.0, description="Relative residual target")
    max_iterations: Optional[int] = Field(
        None, ge=1, description="Iteration cap, default factor * sqrt(node count)"
    )
    max_iter_factor: float = Field(10.0, gt=0.0)
    preconditioner: Literal["none", "jacobi"] = "none"
    kernel_tol: float = Field(
        1e-8, gt=0.0, description="Kernel threshold relative to the largest Rayleigh quotient"
    )
    seed: int = 0

    @classmethod
    def from_settings(cls, **overrides) -> "SolverConfig":
        settings = get_settings()
        values = {
            "rtol": settings.CG_RTOL,
            "max_iter_factor": settings.CG_MAX_ITER_FACTOR,
            "preconditioner": settings.PRECONDITIONER,
            "kernel_tol": settings.KERNEL_TOL,
            "seed": settings.SEED,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def iteration_cap(self, node_count: int) -> int:
        if self.max_iterations is not None:
            return self.max_iterations
        return max(1, int(round(self.max_iter_factor * node_count**0.5)))


class SolverStats(BaseModel):
    """Outcome of one conjugate-gradient solve."""

    iterations: int
    final_residual: float = Field(..., description="Final relative residual")
    converged: bool
    kernel_projection_applied: bool
    kernel_dimension: int = 0
    max_iterations: int
    preconditioner: str = "none"
