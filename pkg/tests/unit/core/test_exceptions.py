"""
Unit tests for exception payloads and exit codes.
"""

import pytest
from pydantic import BaseModel

from bochner_lab.core.exceptions import (
    DegenerateMetric,
    HypersurfaceOnly,
    InvalidParameters,
    NotClosedManifold,
    SolverDiverged,
    UnknownCheck,
    ZeroCrossing,
    handle_exception,
)


class Strict(BaseModel):
    value: int


class TestHandleException:
    """Test suite for handle_exception."""

    @pytest.mark.parametrize(
        "exc, code, exit_code",
        [
            (InvalidParameters("bad"), "invalid_parameters", 4),
            (UnknownCheck("nope"), "unknown_check", 4),
            (SolverDiverged("stuck", stats={"iterations": 3}), "solver_diverged", 3),
            (NotClosedManifold(), "not_closed_manifold", 2),
            (HypersurfaceOnly(2), "hypersurface_only", 2),
        ],
    )
    def test_application_errors(self, exc, code, exit_code):
        payload, returned = handle_exception(exc)

        assert payload["code"] == code
        assert payload["error"] == exc.detail
        assert returned == exit_code

    def test_context_becomes_details(self):
        payload, _ = handle_exception(SolverDiverged("stuck", stats={"iterations": 3}))

        assert payload["details"] == {"iterations": 3}

    def test_pydantic_errors_are_invalid_parameters(self):
        with pytest.raises(Exception) as exc_info:
            Strict(value="many")

        payload, exit_code = handle_exception(exc_info.value)

        assert payload["code"] == "invalid_parameters"
        assert exit_code == 4
        assert payload["details"][0]["loc"] == ("value",)

    def test_unexpected_errors(self, caplog):
        payload, exit_code = handle_exception(RuntimeError("boom"))

        assert payload == {"error": "Internal error", "code": "internal_error"}
        assert exit_code == 1
        assert "boom" in caplog.text


class TestErrorDetails:
    """Node-located errors carry their node."""

    def test_degenerate_metric(self):
        exc = DegenerateMetric((3, 4), 0.0)

        assert exc.node == (3, 4)
        assert "(3, 4)" in exc.detail

    def test_zero_crossing(self):
        exc = ZeroCrossing((1, 2), -1e-9)

        assert exc.code == "zero_crossing"
        assert "(1, 2)" in exc.detail
