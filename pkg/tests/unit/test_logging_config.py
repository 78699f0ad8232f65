"""Unit tests for the logging configuration module."""

import json
import logging

import pytest

from pneumalogic.config.logging_config import (
    ColoredFormatter,
    JsonFormatter,
    StructuredLogger,
    configure_logging,
    get_logger,
)


@pytest.fixture(autouse=True)
def restore_root_logger(monkeypatch):
    """Put the root logger back the way pytest configured it."""
    monkeypatch.delenv("LOG_LEVEL", raising=False)
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    for handler in root.handlers:
        if handler not in handlers:
            handler.close()
    root.handlers[:] = handlers
    root.setLevel(level)


class TestConfigureLogging:
    """Tests for the configure_logging function."""

    def test_sets_level(self, tmp_path):
        """Test that configure_logging sets the requested level."""
        configure_logging(level="DEBUG", log_dir=str(tmp_path), console_output=False)
        assert logging.getLogger().level == logging.DEBUG

    def test_env_variable_wins(self, tmp_path, monkeypatch):
        """Test that LOG_LEVEL overrides the argument."""
        monkeypatch.setenv("LOG_LEVEL", "WARNING")
        configure_logging(level="INFO", log_dir=str(tmp_path), console_output=False)
        assert logging.getLogger().level == logging.WARNING

    def test_creates_log_file(self, tmp_path):
        """Test that file output creates the directory and the default file."""
        log_dir = tmp_path / "custom_logs"
        configure_logging(level="INFO", log_dir=str(log_dir), file_output=True)
        get_logger("pneumalogic.test").info("written")
        assert (log_dir / "pneumalogic.log").exists()

    def test_json_file_records(self, tmp_path):
        """Test that JSON file logs hold one object per line."""
        configure_logging(
            level="INFO",
            log_dir=str(tmp_path),
            json_logs=True,
            console_output=False,
            file_output=True,
        )
        get_logger("pneumalogic.test").info("simulated %d steps", 3000)
        for handler in logging.getLogger().handlers:
            handler.flush()
        lines = (tmp_path / "pneumalogic_log.json").read_text().splitlines()
        record = json.loads(lines[-1])
        assert record["message"] == "simulated 3000 steps"
        assert record["logger"] == "pneumalogic.test"

    def test_console_goes_to_stderr(self, tmp_path, capsys):
        """Test that console records never reach stdout."""
        configure_logging(level="INFO", log_dir=str(tmp_path))
        get_logger("pneumalogic.test").warning("careful")
        captured = capsys.readouterr()
        assert "careful" not in captured.out

    def test_quiets_matplotlib(self, tmp_path):
        configure_logging(level="DEBUG", log_dir=str(tmp_path), console_output=False)
        assert logging.getLogger("matplotlib").level == logging.WARNING


class TestFormatters:
    """Tests for JsonFormatter and ColoredFormatter."""

    def _record(self, level=logging.INFO, msg="hello"):
        return logging.LogRecord("pneumalogic.x", level, __file__, 10, msg, None, None)

    def test_json_formatter_fields(self):
        data = json.loads(JsonFormatter().format(self._record()))
        assert data["level"] == "INFO"
        assert data["message"] == "hello"
        assert data["line"] == 10

    def test_json_formatter_extra_data(self):
        record = self._record()
        record.extra_data = {"netlist": "crawler.pneu"}
        assert json.loads(JsonFormatter().format(record))["extra"] == {"netlist": "crawler.pneu"}

    def test_colored_formatter_names_module_on_warning(self):
        formatter = ColoredFormatter()
        assert "pneumalogic.x" in formatter.format(self._record(logging.WARNING))
        assert "pneumalogic.x" not in formatter.format(self._record(logging.INFO))


class TestStructuredLogger:
    """Tests for the JSON-lines run journal."""

    def test_session_start_entry(self, tmp_path):
        journal = StructuredLogger(log_dir=str(tmp_path / "journal"), run_id="bench")
        entry = json.loads(journal.log_file.read_text().splitlines()[0])
        assert entry["event"] == "session_start"
        assert entry["run_id"] == "bench"

    def test_log_step(self, tmp_path):
        journal = StructuredLogger(log_dir=str(tmp_path))
        journal.log_step(2, "simulate", "completed", output_data={"events": 12})
        journal.log_step(3, "verify", "failed", error="FAIL")
        entries = [json.loads(x) for x in journal.log_file.read_text().splitlines()]
        assert entries[1]["output"] == {"events": 12}
        assert entries[2]["status"] == "failed"
        assert entries[2]["error"] == "FAIL"
        assert "input" not in entries[1]
