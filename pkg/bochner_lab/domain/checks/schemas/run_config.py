"""
Per-run configuration derived from settings and command-line flags.
"""

from typing import List, Literal, Optional

from pydantic import BaseModel, Field, field_validator

from bochner_lab.core.config import get_settings
from bochner_lab.domain.decomposition.schemas.solver import SolverConfig


class RunConfig(BaseModel):
    """Resolution, stencil order, tolerance and solver choices of one run."""

    resolution: Optional[int] = Field(
        None, ge=8, description="Nodes per axis, entry default if omitted"
    )
    resolutions: List[int] = Field(default_factory=list, description="Study resolutions")
    order: Literal[2, 4] = 2
    tol: Optional[float] = Field(None, gt=0.0, description="Overrides every check tolerance")
    seed: int = 0
    strict: bool = Field(False, description="Strict form of the curvature hypotheses")
    p: float = Field(2.0, description="Exponent of the L^p integrability test")
    num_modes: int = Field(6, ge=1)
    threads: int = Field(1, ge=1)
    order_window: float = 0.3
    machine_floor: float = 1e-11
    solver: SolverConfig = Field(default_factory=SolverConfig)

    @field_validator("resolutions")
    @classmethod
    def check_resolutions(cls, value: List[int]) -> List[int]:
        if any(n < 8 for n in value):
            raise ValueError("resolutions must be >= 8")
        return value

    @classmethod
    def from_settings(cls, settings=None, **flags) -> "RunConfig":
        """
        Build a run configuration; flags set to None fall back to settings.

        Args:
            settings: Settings instance, get_settings() by default
            **flags: Field values from the command line
        """
        settings = settings or get_settings()
        values = {
            "order": settings.FD_ORDER,
            "seed": settings.SEED,
            "num_modes": settings.NUM_MODES,
            "threads": settings.THREADS,
            "order_window": settings.ORDER_WINDOW,
            "machine_floor": settings.MACHINE_FLOOR,
            "resolutions": list(settings.DEFAULT_RESOLUTIONS),
        }
        values.update({key: value for key, value in flags.items() if value is not None})
        values["solver"] = SolverConfig(
            rtol=settings.CG_RTOL,
            max_iter_factor=settings.CG_MAX_ITER_FACTOR,
            preconditioner=settings.PRECONDITIONER,
            kernel_tol=settings.KERNEL_TOL,
            seed=values["seed"],
        )
        return cls(**values)

    def at_resolution(self, resolution: int) -> "RunConfig":
        return self.model_copy(update={"resolution": resolution})
