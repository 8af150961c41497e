from typing import List, Literal

from pydantic import Field
from pydantic_settings import BaseSettings as PydanticBaseSettings
from pydantic_settings import SettingsConfigDict


class BaseSettings(PydanticBaseSettings):
    """Base settings class for application configuration."""

    model_config = SettingsConfigDict(
        env_prefix="BOCHNER_LAB_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Environment
    ENV: str = Field(
        "development", description="Environment (development, testing)"
    )
    DEBUG: bool = Field(False, description="Log at DEBUG regardless of LOG_LEVEL")

    # Application
    APP_NAME: str = Field("bochner-lab", description="Application name")
    APP_VERSION: str = Field("0.1.0", description="Application version")

    # Logging
    LOG_LEVEL: str = Field("INFO", description="Logging level")

    # Parallelism
    THREADS: int = Field(
        1, ge=1, description="Upper bound on worker threads (BOCHNER_LAB_THREADS)"
    )

    # Discretization
    FD_ORDER: Literal[2, 4] = Field(2, description="Central-difference order")
    POLAR_MARGIN: float = Field(
        0.05,
        ge=0.0,
        le=0.25,
        description="Fraction of a lat-long polar axis excluded from residual norms",
    )
    POLE_CUT: float = Field(
        0.01,
        gt=0.0,
        lt=0.1,
        description="Fraction of pi removed at each pole of a lat-long chart",
    )

    # Tolerances
    TOL_FLOOR: float = Field(1e-6, description="Floor of identity tolerances")
    MACHINE_FLOOR: float = Field(
        1e-11, description="Residuals below this are at the floating-point floor"
    )
    ORDER_WINDOW: float = Field(
        0.3, description="Accepted deviation of a fitted order from the stencil order"
    )

    # Curvature extremes
    SEC_SAMPLES: int = Field(256, ge=0, description="Random planes for sec_min")
    SEC_REFINEMENT_STEPS: int = Field(
        20, ge=0, description="Local refinement steps for sec_min"
    )
    SEED: int = Field(0, description="Seed for every random draw")

    # Solvers
    CG_RTOL: float = Field(1e-8, description="CG relative residual target")
    CG_MAX_ITER_FACTOR: float = Field(
        10.0, description="CG max iterations = factor * sqrt(node count)"
    )
    PRECONDITIONER: Literal["none", "jacobi"] = Field(
        "none", description="CG preconditioner"
    )
    KERNEL_TOL: float = Field(
        1e-8, description="Kernel threshold relative to the largest Rayleigh quotient"
    )
    NUM_MODES: int = Field(6, ge=1, description="Eigenvalues reported by stability")
    EIGEN_TOL: float = Field(1e-10, description="Lanczos convergence tolerance")

    # Runs
    DEFAULT_RESOLUTION: int = Field(32, ge=8, description="Default nodes per axis")
    DEFAULT_RESOLUTIONS: List[int] = Field(
        [32, 64, 128], description="Default resolutions of a convergence study"
    )
