"""
Unit tests for the verification pipeline and batch simulation.
"""

from unittest.mock import MagicMock

import pytest

from pneumalogic.exceptions import InvalidMonitorError, NetlistParseError
from pneumalogic.models.trace import SimConfig
from pneumalogic.services.pipeline import (
    PipelineStatus,
    PipelineStep,
    VerificationPipeline,
    chart_monitors,
    simulate_batch,
)


@pytest.fixture
def pipeline(test_settings):
    return VerificationPipeline(settings=test_settings, journal=MagicMock())


class TestChartMonitors:
    """Tests for chart_monitors."""

    def test_chart_order(self, crawler_circuit, crawler_chart):
        monitors = chart_monitors(crawler_circuit, crawler_chart)
        assert [m.signal for m in monitors] == ["M[P_M]", "R[P_R]", "F[P_F]"]

    def test_signal_without_monitor(self, crawler_circuit, feet_chart):
        with pytest.raises(InvalidMonitorError):
            chart_monitors(crawler_circuit, feet_chart)


class TestVerificationPipeline:
    """Tests for VerificationPipeline.run."""

    def test_crawler_passes(self, pipeline, circuits_dir, crawler_chart):
        result = pipeline.run(
            circuits_dir / "crawler.pneu", chart=crawler_chart, cfg=SimConfig(t_end=30.0)
        )
        assert result.status is PipelineStatus.COMPLETED
        assert result.passed
        assert result.report.cycles_covered >= 2
        assert [s.step for s in result.steps] == list(PipelineStep)
        assert pipeline.journal.log_step.call_count == 5

    def test_without_chart(self, pipeline, circuits_dir, fast_config):
        result = pipeline.run(circuits_dir / "not_gate.pneu", cfg=fast_config)
        assert result.report is None
        assert result.passed
        assert result.sequence[0] == (0, 0)
        assert PipelineStep.VERIFY not in [s.step for s in result.steps]

    def test_trace_out(self, pipeline, circuits_dir, fast_config, tmp_path):
        out = tmp_path / "not_gate.csv"
        pipeline.run(circuits_dir / "not_gate.pneu", cfg=fast_config, trace_out=out)
        assert out.read_text().startswith("t,A.p,B.p,v_B.status\n")

    def test_parse_failure_is_journaled(self, pipeline, fixtures_dir):
        with pytest.raises(NetlistParseError):
            pipeline.run(fixtures_dir / "dangling_sense.pneu")
        kwargs = pipeline.journal.log_step.call_args
        assert kwargs.args[1:3] == ("parse", "failed")

    def test_run_ids_are_unique(self, pipeline, circuits_dir, fast_config):
        first = pipeline.run(circuits_dir / "not_gate.pneu", cfg=fast_config)
        second = pipeline.run(circuits_dir / "not_gate.pneu", cfg=fast_config)
        assert first.run_id != second.run_id


class TestSimulateBatch:
    """Tests for simulate_batch."""

    def test_failures_are_isolated(self, circuits_dir, fixtures_dir, fast_config, tmp_path):
        items = simulate_batch(
            [circuits_dir / "not_gate.pneu", fixtures_dir / "dangling_sense.pneu"],
            [tmp_path / "a.csv", tmp_path / "b.csv"],
            fast_config,
        )
        assert items[0].ok
        assert items[0].events > 0
        assert (tmp_path / "a.csv").exists()
        assert not items[1].ok
        assert items[1].exit_code == 2
        assert items[1].diagnostics[0].startswith(str(fixtures_dir / "dangling_sense.pneu"))
        assert ":4:25: error:" in items[1].diagnostics[0]
        assert not (tmp_path / "b.csv").exists()
