"""
Submanifolds domain models.
"""

from bochner_lab.domain.submanifolds.models.immersion import (
    AmbientSpace,
    Immersion,
    NormalFrame,
    SecondFundamentalData,
)

__all__ = ["AmbientSpace", "Immersion", "NormalFrame", "SecondFundamentalData"]
