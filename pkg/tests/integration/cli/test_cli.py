"""
Integration tests for the bochner-lab command line.
"""

import csv
import json

import pytest

from bochner_lab.cli import run_cli
from tests.utils.cli_helpers import run_json


class TestCheckCommand:
    """Test suite for `bochner-lab check`."""

    def test_passing_check(self, capsys):
        code, report = run_json(
            ["check", "simons", "--geometry", "clifford_torus", "--params", "n1=1,n2=1"], capsys
        )

        assert code == 0
        assert report["verdict"] == "pass"
        assert report["geometry"] == {"name": "clifford_torus", "params": {"n1": 1, "n2": 1}}
        assert report["resolutions"] == [16]

    def test_failing_check(self, capsys):
        code, report = run_json(
            [
                "check",
                "harmonic",
                "--geometry",
                "circle_to_sphere",
                "--params",
                "theta0=1.0",
                "--resolution",
                "64",
            ],
            capsys,
        )

        assert code == 2
        assert report["verdict"] == "fail"

    def test_unknown_check(self, capsys):
        code, report = run_json(["check", "poincare", "--geometry", "flat_torus"], capsys)

        assert code == 4
        assert report["error"]["code"] == "unknown_check"

    def test_matrix_parameter(self, capsys):
        code, report = run_json(
            ["check", "harmonic", "--geometry", "linear_torus_map", "--params", "matrix=[[2,1],[1,1]]"],
            capsys,
        )

        assert code == 0
        assert report["geometry"]["params"]["matrix"] == [[2, 1], [1, 1]]

    def test_out_and_csv_files(self, capsys, tmp_path):
        out, table = tmp_path / "report.json", tmp_path / "table.csv"

        code = run_cli(
            [
                "check",
                "reference",
                "--geometry",
                "flat_torus",
                "--out",
                str(out),
                "--csv",
                str(table),
            ]
        )

        assert code == 0
        assert capsys.readouterr().out == ""
        assert json.loads(out.read_text())["check_id"] == "reference"
        rows = list(csv.reader(table.read_text().splitlines()))
        assert rows[0][0] == "resolution"
        assert rows[0][-1] == "verdict"
        assert rows[1][-1] == "pass"


class TestStudyCommand:
    """Test suite for `bochner-lab study`."""

    def test_study(self, capsys):
        code, report = run_json(
            ["study", "ahlfors_eigenform", "--geometry", "flat_torus", "--resolutions", "16,32,64"],
            capsys,
        )

        assert code == 0
        assert report["convergence_order"] == pytest.approx(2.0, abs=0.3)
        assert [row["resolution"] for row in report["table"]] == [16, 32, 64]

    def test_too_few_resolutions(self, capsys):
        code, report = run_json(
            ["study", "harmonic", "--geometry", "linear_torus_map", "--resolutions", "16,32"], capsys
        )

        assert code == 4
        assert report["verdict"] == "error"


class TestOtherCommands:
    """Test suite for catalog, stability, config and schema."""

    def test_catalog_list(self, capsys):
        code, listing = run_json(["catalog", "list"], capsys)

        assert code == 0
        assert "clifford_torus" in [item["name"] for item in listing]

    def test_catalog_show(self, capsys):
        code, description = run_json(["catalog", "show", "product_sphere"], capsys)

        assert code == 0
        assert description["default_resolution"] == 12
        values = {ref["quantity"]: ref["value"] for ref in description["references"]}
        assert values["ric_min"] == pytest.approx(0.25)

    def test_catalog_show_unknown(self, capsys):
        code, payload = run_json(["catalog", "show", "klein_bottle"], capsys)

        assert code == 4
        assert payload["code"] == "unknown_entry"

    def test_stability(self, capsys):
        code, summary = run_json(
            ["stability", "--geometry", "clifford_torus", "--resolution", "32", "--order", "4"], capsys
        )

        assert code == 0
        assert summary["lambda_max"] == pytest.approx(4.0, abs=1e-2)
        assert not summary["stable"]
        assert summary["V_range"][0] == pytest.approx(4.0, abs=1e-6)

    def test_config_show_with_file(self, capsys, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"SEED": 5}))

        code, settings = run_json(["--config", str(path), "config", "show"], capsys)

        assert code == 0
        assert settings["SEED"] == 5
        assert settings["ENV"] == "testing"

    def test_config_file_after_subcommand(self, capsys, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"fd_order": 4}))

        code, report = run_json(
            ["check", "harmonic", "--geometry", "linear_torus_map", "--config", str(path)], capsys
        )

        assert code == 0
        assert report["order"] == 4

    def test_schema(self, capsys):
        code, schema = run_json(["schema"], capsys)

        assert code == 0
        assert "verdict" in schema["properties"]

    def test_bad_arguments(self, capsys):
        code, payload = run_json(["check"], capsys)

        assert code == 4
        assert payload["code"] == "invalid_parameters"
