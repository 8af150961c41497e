"""
Unit tests for JSON and CSV report emission.
"""

import json
import math

import pytest

from bochner_lab.domain.checks.schemas.report import GeometrySpec, ResolutionRow, VerificationReport
from bochner_lab.infrastructure.reporting import dumps, format_float, residual_table, write_csv, write_json


@pytest.fixture
def report():
    return VerificationReport(
        check_id="simons",
        geometry=GeometrySpec(name="clifford_torus"),
        resolutions=[16],
        order=2,
        residuals={"residual": 0.1, "minimal": 0.0},
        tolerances={"residual": 1.0, "minimal": 0.0},
        verdict="pass",
    )


class TestJson:
    """Test suite for the JSON writer."""

    @pytest.mark.parametrize(
        "value, text",
        [
            (0.1, "0.10000000000000001"),
            (2.0, "2"),
            (float("nan"), '"NaN"'),
            (float("inf"), '"Infinity"'),
            (-float("inf"), '"-Infinity"'),
        ],
    )
    def test_format_float(self, value, text):
        assert format_float(value) == text

    def test_keys_are_sorted(self, report):
        text = dumps(report)

        keys = list(json.loads(text))
        assert keys == sorted(keys)
        assert text.endswith("\n")

    def test_full_precision_survives(self):
        value = math.pi / 7

        assert json.loads(dumps({"x": value}))["x"] == value

    def test_non_finite_values_are_strings(self):
        decoded = json.loads(dumps({"a": [float("nan"), 1]}))

        assert decoded == {"a": ["NaN", 1]}

    def test_unencodable_value(self):
        with pytest.raises(TypeError):
            dumps({"a": object()})

    def test_write_json(self, report, tmp_path):
        path = write_json(report, tmp_path / "report.json")

        assert json.loads(path.read_text())["verdict"] == "pass"


class TestCsv:
    """Test suite for the CSV residual table."""

    def test_single_run_row(self, report):
        lines = residual_table(report).splitlines()

        assert lines[0] == "resolution,spacing,minimal,residual,verdict"
        assert lines[1] == "16,NaN,0,0.10000000000000001,pass"

    def test_study_rows(self, report, tmp_path):
        study = report.model_copy(
            update={
                "table": [
                    ResolutionRow(resolution=16, spacing=0.5, residuals={"residual": 0.4}, verdict="fail"),
                    ResolutionRow(resolution=32, spacing=0.25, residuals={"residual": 0.1}, verdict="pass"),
                ]
            }
        )

        path = write_csv(study, tmp_path / "table.csv")

        assert path.read_text().splitlines() == [
            "resolution,spacing,residual,verdict",
            "16,0.5,0.40000000000000002,fail",
            "32,0.25,0.10000000000000001,pass",
        ]

    def test_error_report_has_header_only(self, report):
        failed = report.model_copy(update={"residuals": {}, "verdict": "error"})

        assert residual_table(failed) == "resolution,spacing,verdict\n"
