"""
Unit tests for binary field snapshots.
"""

import numpy as np
import pytest

from bochner_lab.core.exceptions import ValidationError
from bochner_lab.domain.decomposition.schemas.solver import SolverConfig
from bochner_lab.domain.decomposition.services.ahlfors import delta_star
from bochner_lab.domain.decomposition.services.decomposition_service import solve_decomposition
from bochner_lab.domain.geometry.models.fields import FieldRole, MetricField, TensorField
from bochner_lab.infrastructure.serialization import (
    dump_snapshot,
    load_snapshot,
    read_snapshot,
    write_snapshot,
)
from bochner_lab.infrastructure.serialization.snapshot import LENGTH, SnapshotHeader


class TestSnapshot:
    """Test suite for dump_snapshot and load_snapshot."""

    def test_tensor_field(self, wave_one_form):
        loaded = load_snapshot(dump_snapshot(wave_one_form))

        assert loaded.role is FieldRole.ONE_FORM
        assert loaded.chart == wave_one_form.chart
        np.testing.assert_array_equal(loaded.data, wave_one_form.data)

    def test_metric_field(self, sphere_metric):
        loaded = load_snapshot(dump_snapshot(sphere_metric))

        assert isinstance(loaded, MetricField)
        np.testing.assert_array_equal(loaded.components, sphere_metric.components)

    def test_decomposition(self, flat_metric, wave_one_form, tmp_path):
        phi = delta_star(wave_one_form, flat_metric)
        result = solve_decomposition(phi, flat_metric, SolverConfig(rtol=1e-10, max_iterations=2000))

        path = write_snapshot(result, tmp_path / "split.bin")
        loaded = read_snapshot(path)

        np.testing.assert_array_equal(loaded.tt_part.data, result.tt_part.data)
        assert loaded.solver_stats == result.solver_stats

    def test_header_records_layout(self, wave_one_form, test_settings):
        raw = dump_snapshot(wave_one_form)
        (length,) = LENGTH.unpack_from(raw)

        header = SnapshotHeader.model_validate_json(raw[LENGTH.size : LENGTH.size + length])

        assert header.kind == "tensor_field"
        assert header.blocks[0].valence == (1, 0)
        assert header.tolerance["TOL_FLOOR"] == test_settings.TOL_FLOOR
        assert len(raw) == LENGTH.size + length + wave_one_form.data.size * 8

    def test_truncated_bytes(self, wave_one_form):
        raw = dump_snapshot(wave_one_form)

        with pytest.raises(ValidationError):
            load_snapshot(raw[:4])
        with pytest.raises(ValidationError):
            load_snapshot(raw[:20])
        with pytest.raises(ValidationError):
            load_snapshot(raw[:-8])

    def test_unknown_version(self, wave_one_form):
        raw = dump_snapshot(wave_one_form)
        (length,) = LENGTH.unpack_from(raw)
        header = raw[LENGTH.size : LENGTH.size + length].replace(b'"format_version": 1', b'"format_version": 9')

        with pytest.raises(ValidationError):
            load_snapshot(LENGTH.pack(len(header)) + header + raw[LENGTH.size + length :])

    def test_expected_type(self, wave_one_form, tmp_path):
        path = write_snapshot(wave_one_form, tmp_path / "field.bin")

        with pytest.raises(ValidationError):
            read_snapshot(path, expected=MetricField)
        assert isinstance(read_snapshot(path, expected=TensorField), TensorField)

    def test_unsupported_object(self):
        with pytest.raises(ValidationError):
            dump_snapshot(np.zeros(3))
