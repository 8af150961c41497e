"""
Unit tests for check dispatch, verdicts and convergence studies.
"""

import math

import pytest

from bochner_lab.core.exceptions import UnknownCheck
from bochner_lab.domain.checks.models.check import CheckOutcome
from bochner_lab.domain.checks.repositories.check_repository import CheckRepository
from bochner_lab.domain.checks.schemas.report import GeometrySpec, report_json_schema, verdict_for
from bochner_lab.domain.checks.schemas.run_config import RunConfig
from bochner_lab.domain.checks.services.check_service import as_geometry, fit_order, plain
from bochner_lab.domain.decomposition.schemas.solver import SolverConfig
from tests.factories import GeometrySpecFactory, RunConfigFactory


class TestVerdicts:
    """Test suite for verdict_for and CheckOutcome."""

    def test_pass_iff_every_residual_within_tolerance(self):
        assert verdict_for({"a": 1e-9, "b": 0.0}, {"a": 1e-8, "b": 0.0}) == "pass"
        assert verdict_for({"a": 1e-9, "b": 1.0}, {"a": 1e-8, "b": 0.0}) == "fail"
        assert verdict_for({}, {}) == "pass"

    def test_informational_overrides(self):
        assert verdict_for({"a": 5.0}, {"a": 1.0}, informational=True) == "informational"

    def test_flags_are_zero_tolerance_residuals(self):
        outcome = CheckOutcome()

        outcome.flag("holds", True)
        outcome.flag("broken", False)

        assert outcome.residuals == {"holds": 0.0, "broken": 1.0}
        assert outcome.tolerances == {"holds": 0.0, "broken": 0.0}

    def test_geometry_label(self):
        spec = GeometrySpecFactory(name="clifford_torus", params={"n2": 2, "n1": 1})

        assert spec.label() == "clifford_torus(n1=1,n2=2)"
        assert as_geometry("equator") == GeometrySpec(name="equator")
        assert as_geometry({"name": "equator", "params": {"n": 3}}).params == {"n": 3}

    def test_plain_converts_numpy(self):
        import numpy as np

        value = plain({"a": np.float64(1.5), "b": np.arange(2), "c": (np.bool_(True),)})

        assert value == {"a": 1.5, "b": [0, 1], "c": [True]}
        assert type(value["a"]) is float

    def test_fit_order(self):
        spacings = [0.4, 0.2, 0.1]

        assert fit_order(spacings, [3.0 * h**2 for h in spacings]) == pytest.approx(2.0)

    def test_report_schema(self):
        schema = report_json_schema()

        assert "verdict" in schema["required"]
        assert "residuals" in schema["properties"]


class TestCheckRepository:
    """Test suite for CheckRepository."""

    def test_unknown_check(self):
        with pytest.raises(UnknownCheck) as exc_info:
            CheckRepository().get("poincare")

        assert exc_info.value.exit_code == 4

    def test_studied_checks_name_their_residual(self):
        repository = CheckRepository()

        assert repository.get("simons").decay == "residual"
        assert repository.get("pinching").decay is None
        assert "reference" in repository


class TestDispatch:
    """Test suite for CheckDispatcher.dispatch."""

    def test_pass(self, dispatcher):
        geometry = GeometrySpecFactory(name="linear_torus_map", params={"matrix": [[2, 1], [1, 1]]})

        report = dispatcher.dispatch("harmonic", geometry, RunConfigFactory())

        assert report.verdict == "pass"
        assert report.exit_code == 0
        assert report.resolutions == [16]
        assert report.decay_residual == "max_tension"
        assert "central differences of order 2" in report.provenance_notes

    def test_fail(self, dispatcher):
        geometry = GeometrySpecFactory(name="circle_to_sphere", params={"theta0": math.pi / 3})

        report = dispatcher.dispatch("harmonic", geometry, RunConfigFactory(resolution=64))

        assert report.verdict == "fail"
        assert report.exit_code == 2
        assert report.residuals["max_tension"] == pytest.approx(math.sin(math.pi / 3) * 0.5, rel=1e-2)

    def test_informational_exits_zero(self, dispatcher):
        geometry = GeometrySpecFactory(name="circle_to_sphere", params={"theta0": math.pi / 3})

        report = dispatcher.dispatch("weitzenboeck", geometry, RunConfigFactory(resolution=64))

        assert report.verdict == "informational"
        assert report.exit_code == 0

    def test_reference_check(self, dispatcher):
        report = dispatcher.dispatch("reference", "clifford_torus", RunConfigFactory())

        assert report.verdict == "pass"
        assert set(report.residuals) == {
            "phi_norm_sq",
            "mean_curvature",
            "principal_curvatures",
            "normal_ricci",
        }

    @pytest.mark.parametrize(
        "check_id, geometry, code",
        [
            ("poincare", "flat_torus", "unknown_check"),
            ("reference", "klein_bottle", "unknown_entry"),
            ("simons", "flat_torus", "invalid_parameters"),
            ("reference", {"name": "round_sphere", "params": {"r": 0}}, "invalid_parameters"),
        ],
    )
    def test_errors_become_reports(self, dispatcher, check_id, geometry, code):
        report = dispatcher.dispatch(check_id, geometry, RunConfigFactory())

        assert report.verdict == "error"
        assert report.exit_code == 4
        assert report.error["code"] == code

    @pytest.mark.parametrize("check_id", ["rigidity", "integral_3_9", "superharmonic"])
    def test_flat_slice_passes(self, dispatcher, check_id):
        geometry = GeometrySpecFactory(name="flat_subtorus", params={"z0": 0.5})

        report = dispatcher.dispatch(check_id, geometry, RunConfigFactory())

        assert report.verdict == "pass"
        assert report.exit_code == 0

    def test_solver_divergence_exit_code(self, dispatcher):
        config = RunConfigFactory(solver=SolverConfig(rtol=1e-14, max_iterations=1))

        report = dispatcher.dispatch("decomposition", "graph_hypersurface", config)

        assert report.verdict == "error"
        assert report.exit_code == 3
        assert report.error["details"]["iterations"] == 1

    def test_tolerance_override_is_noted(self, dispatcher):
        report = dispatcher.dispatch("harmonic", "linear_torus_map", RunConfigFactory(tol=1e-3))

        assert report.tolerances["max_tension"] == 1e-3
        assert any("overridden" in note for note in report.provenance_notes)


class TestConvergenceStudy:
    """Test suite for CheckDispatcher.study."""

    def test_second_order_decay(self, dispatcher):
        report = dispatcher.study("ahlfors_eigenform", "flat_torus", RunConfigFactory())

        assert report.verdict == "pass"
        assert report.convergence_order == pytest.approx(2.0, abs=0.3)
        assert [row.resolution for row in report.table] == [16, 32, 64]
        assert report.details["order_target"] == 2

    def test_machine_floor(self, dispatcher):
        report = dispatcher.study("weitzenboeck", "linear_torus_map", RunConfigFactory())

        assert report.verdict == "pass"
        assert any("machine floor" in note for note in report.provenance_notes)

    def test_table_keeps_input_order_with_threads(self, dispatcher):
        config = RunConfigFactory(resolutions=[16, 32, 64], threads=3)

        report = dispatcher.study("harmonic", "linear_torus_map", config)

        assert report.resolutions == [16, 32, 64]
        assert [row.spacing for row in report.table] == sorted(
            (row.spacing for row in report.table), reverse=True
        )

    def test_non_dyadic_resolutions_warn(self, dispatcher, caplog):
        config = RunConfigFactory(resolutions=[16, 24, 32])

        report = dispatcher.study("harmonic", "linear_torus_map", config)

        assert report.verdict == "pass"
        assert "not dyadic" in caplog.text

    @pytest.mark.parametrize(
        "check_id, resolutions",
        [
            ("harmonic", [16, 32]),
            ("harmonic", [32, 16, 64]),
            ("pinching", [16, 32, 64]),
        ],
    )
    def test_invalid_studies(self, dispatcher, check_id, resolutions):
        geometry = "clifford_torus" if check_id == "pinching" else "linear_torus_map"

        report = dispatcher.study(check_id, geometry, RunConfigFactory(resolutions=resolutions))

        assert report.verdict == "error"
        assert report.exit_code == 4


class TestRunConfig:
    """Test suite for RunConfig."""

    def test_from_settings_uses_defaults(self, test_settings):
        config = RunConfig.from_settings(test_settings, order=None, resolution=32)

        assert config.resolution == 32
        assert config.order == test_settings.FD_ORDER
        assert config.resolutions == test_settings.DEFAULT_RESOLUTIONS

    def test_resolutions_validated(self):
        with pytest.raises(ValueError):
            RunConfig(resolutions=[4, 8, 16])
