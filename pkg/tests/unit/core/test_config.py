"""
Unit tests for settings layering.
"""

import json

import pytest

from bochner_lab.core.config import activate_settings, get_settings, load_settings
from bochner_lab.core.config.testing import TestingSettings
from bochner_lab.core.exceptions import InvalidParameters


class TestLoadSettings:
    """Test suite for load_settings."""

    def test_environment_defaults(self, test_settings):
        settings = load_settings()

        assert isinstance(settings, TestingSettings)
        assert settings.DEFAULT_RESOLUTION == 16
        assert settings.POLAR_MARGIN == 0.05

    def test_file_then_overrides(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"fd_order": 4, "seed": 3, "threads": 2}))

        settings = load_settings(path, {"SEED": 7})

        assert settings.FD_ORDER == 4
        assert settings.THREADS == 2
        assert settings.SEED == 7

    def test_environment_variable(self, monkeypatch):
        monkeypatch.setenv("BOCHNER_LAB_THREADS", "5")

        assert TestingSettings().THREADS == 5

    def test_unknown_key(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"resolution_budget": 3}))

        with pytest.raises(InvalidParameters) as exc_info:
            load_settings(path)

        assert "RESOLUTION_BUDGET" in exc_info.value.detail

    def test_invalid_value(self):
        with pytest.raises(InvalidParameters):
            load_settings(overrides={"FD_ORDER": 3})

    def test_file_must_hold_object(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text("[1, 2]")

        with pytest.raises(InvalidParameters):
            load_settings(path)


class TestActivateSettings:
    """Test suite for activate_settings."""

    def test_activation_and_restore(self, test_settings):
        custom = load_settings(overrides={"SEED": 11})

        activate_settings(custom)
        assert get_settings().SEED == 11

        activate_settings(None)
        assert get_settings() is test_settings
