"""
Unit tests for Settings configuration module.

Tests cover:
- Defaults without any environment
- PNEUMA_* environment overrides
- Field validators
- Helper methods
"""

from pathlib import Path

import pytest
from pydantic import ValidationError

from pneumalogic.config.settings import Settings, get_settings, validate_settings
from pneumalogic.exceptions import ConfigurationError

# =============================================================================
# Defaults
# =============================================================================


class TestSettingsDefaults:
    """Tests for default values."""

    def test_simulation_defaults(self, test_settings):
        assert test_settings.dt_max == 0.01
        assert test_settings.t_end == 30.0
        assert test_settings.event_tol == 1e-6
        assert test_settings.record_stride == 10

    def test_verification_defaults(self, test_settings):
        assert test_settings.dwell_min == 0.05
        assert test_settings.min_cycles == 2
        assert test_settings.batch_workers == 1

    def test_logging_defaults(self, test_settings):
        assert test_settings.log_level == "INFO"
        assert test_settings.log_to_file is False
        assert test_settings.journal_dir is None


# =============================================================================
# Environment
# =============================================================================


class TestSettingsEnvironment:
    """Tests for PNEUMA_* overrides."""

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("PNEUMA_T_END", "60")
        monkeypatch.setenv("PNEUMA_MIN_CYCLES", "3")
        settings = Settings(_env_file=None)
        assert settings.t_end == 60.0
        assert settings.min_cycles == 3

    def test_env_file(self, tmp_path):
        env_file = tmp_path / "bench.env"
        env_file.write_text("PNEUMA_DWELL_MIN=0.2\nPNEUMA_LOG_LEVEL=debug\n")
        settings = Settings(_env_file=str(env_file))
        assert settings.dwell_min == 0.2
        assert settings.log_level == "DEBUG"

    def test_test_env_from_fixture(self):
        assert get_settings().env == "test"


# =============================================================================
# Validators
# =============================================================================


class TestSettingsValidators:
    """Tests for field and model validators."""

    def test_unknown_log_level(self):
        with pytest.raises(ValidationError):
            Settings(_env_file=None, log_level="LOUD")

    @pytest.mark.parametrize(
        "field,value", [("dt_max", 0), ("event_tol", 1.0), ("min_cycles", 0), ("dwell_min", -1)]
    )
    def test_out_of_range(self, field, value):
        with pytest.raises(ValidationError):
            Settings(_env_file=None, **{field: value})

    def test_horizon_must_exceed_step(self):
        with pytest.raises(ValidationError, match="must exceed dt_max"):
            Settings(_env_file=None, dt_max=0.5, t_end=0.5)

    def test_get_settings_wraps_errors(self, monkeypatch):
        monkeypatch.setenv("PNEUMA_DT_MAX", "-1")
        get_settings.cache_clear()
        with pytest.raises(ConfigurationError, match="PNEUMA_"):
            get_settings()

    def test_validate_settings_clears_cache(self, monkeypatch):
        first = get_settings()
        monkeypatch.setenv("PNEUMA_T_END", "45")
        assert validate_settings() is not first
        assert get_settings().t_end == 45.0


# =============================================================================
# Helper Methods
# =============================================================================


class TestSettingsHelpers:
    """Tests for sim_config and ensure_directories."""

    def test_sim_config_defaults(self, test_settings):
        cfg = test_settings.sim_config()
        assert (cfg.dt_max, cfg.t_end, cfg.event_tol, cfg.record_stride) == (
            0.01, 30.0, 1e-6, 10
        )

    def test_sim_config_ignores_none(self, test_settings):
        cfg = test_settings.sim_config(t_end=None, dt_max=0.005)
        assert cfg.t_end == 30.0
        assert cfg.dt_max == 0.005

    def test_ensure_directories(self, tmp_path):
        settings = Settings(
            _env_file=None,
            log_to_file=True,
            logs_dir=str(tmp_path / "logs"),
            journal_dir=str(tmp_path / "journal"),
        )
        settings.ensure_directories()
        assert Path(settings.logs_dir).is_dir()
        assert Path(settings.journal_dir).is_dir()
