"""
Pytest configuration and shared fixtures for pneumalogic tests.

This module provides:
- Environment isolation for the PNEUMA_* settings
- Paths to the shipped circuits and test fixtures
- Parsed reference circuits and charts
"""

import os
import sys
from pathlib import Path

import pytest

# Add project root to path for imports
PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

CIRCUITS_DIR = PROJECT_ROOT / "circuits"
FIXTURES_DIR = Path(__file__).parent / "fixtures"


# =============================================================================
# Environment Configuration
# =============================================================================


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch, tmp_path):
    """
    Run every test against default settings.

    Clears PNEUMA_* variables inherited from the shell, points the log and
    journal directories into the test's tmp_path and resets the settings cache.
    """
    from pneumalogic.config.settings import get_settings

    for key in list(os.environ):
        if key.startswith("PNEUMA_"):
            monkeypatch.delenv(key, raising=False)
    monkeypatch.setenv("PNEUMA_ENV", "test")
    monkeypatch.setenv("PNEUMA_LOGS_DIR", str(tmp_path / "logs"))
    monkeypatch.chdir(tmp_path)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def test_settings():
    """Settings with defaults only (no .env file)."""
    from pneumalogic.config.settings import Settings

    return Settings(_env_file=None)


# =============================================================================
# Circuits and Charts
# =============================================================================


@pytest.fixture
def circuits_dir() -> Path:
    return CIRCUITS_DIR


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES_DIR


@pytest.fixture
def crawler_circuit():
    """The three-actuator crawler netlist."""
    from pneumalogic.netlist import load_circuit

    return load_circuit(CIRCUITS_DIR / "crawler.pneu")


@pytest.fixture
def crawler_chart():
    """The six-state crawler gait chart."""
    from pneumalogic.netlist import load_chart

    return load_chart(CIRCUITS_DIR / "crawler.chart")


@pytest.fixture
def feet_circuit():
    from pneumalogic.netlist import load_circuit

    return load_circuit(CIRCUITS_DIR / "feet.pneu")


@pytest.fixture
def feet_chart():
    from pneumalogic.netlist import load_chart

    return load_chart(CIRCUITS_DIR / "feet.chart")


@pytest.fixture
def oscillator_circuit():
    from pneumalogic.netlist import load_circuit

    return load_circuit(CIRCUITS_DIR / "oscillator.pneu")


@pytest.fixture
def fast_config():
    """Short-horizon simulation config for unit tests."""
    from pneumalogic.models.trace import SimConfig

    return SimConfig(dt_max=0.01, t_end=5.0, event_tol=1e-6, record_stride=10)
