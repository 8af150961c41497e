"""
Check definitions and their raw outcomes.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, FrozenSet, List, Optional

from bochner_lab.domain.catalog.models.entry import EntryKind


@dataclass
class CheckOutcome:
    """Named residuals with matching tolerances, plus free-form details."""

    residuals: Dict[str, float] = field(default_factory=dict)
    tolerances: Dict[str, float] = field(default_factory=dict)
    details: Dict[str, Any] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)
    informational: bool = False
    decay: Optional[str] = None

    def add(self, name: str, residual: float, tolerance: float) -> None:
        self.residuals[name] = float(residual)
        self.tolerances[name] = float(tolerance)

    def flag(self, name: str, holds: bool) -> None:
        """A logical condition as a 0/1 residual with zero tolerance."""
        self.add(name, 0.0 if holds else 1.0, 0.0)


CheckRunner = Callable[..., CheckOutcome]


@dataclass(frozen=True)
class CheckDefinition:
    """
    A registered check.

    decay names the residual fitted by convergence studies; checks without
    a decaying residual cannot be studied.
    """

    check_id: str
    kinds: FrozenSet[EntryKind]
    runner: CheckRunner
    description: str
    decay: Optional[str] = None
