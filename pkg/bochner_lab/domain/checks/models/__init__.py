from bochner_lab.domain.checks.models.check import CheckDefinition, CheckOutcome, CheckRunner

__all__ = ["CheckDefinition", "CheckOutcome", "CheckRunner"]
