"""
Unit tests for trace discretization and sequence extraction.
"""

import pytest

from pneumalogic.exceptions import InvalidInputError, InvalidMonitorError
from pneumalogic.models.circuit import Monitor
from pneumalogic.models.logic import ConstantThreshold, HystereticThreshold
from pneumalogic.models.trace import DiscreteTrace, SignalRef, Trace, TraceSample
from pneumalogic.models.valve import FlowStatus
from pneumalogic.services.discretizer import (
    discretize_trace,
    extract_sequence,
    logic_to_csv,
    write_logic_csv,
)

B, U = FlowStatus.BLOCKED, FlowStatus.UNBLOCKED
CONST = Monitor(actuator="A", label="P", threshold=ConstantThreshold(level=1.0))
HYST = Monitor(actuator="A", label="P+-", threshold=HystereticThreshold(low=0.5, high=2.0))


@pytest.fixture
def trace():
    """Hand-built trace: A rises to 2.5 psi and falls back to 0.2 psi."""
    trace = Trace(actuators=("A",), valves=("v",))
    points = [(0.0, 0.0, B), (1.0, 1.5, B), (2.0, 2.5, U), (3.0, 1.0, U), (4.0, 0.2, B)]
    for t, p, status in points:
        trace.append(TraceSample(t=t, pressures={"A": p}, statuses={"v": status}, memories={}))
    return trace


class TestDiscretizeTrace:
    """Tests for discretize_trace."""

    def test_constant_monitor(self, trace):
        dt = discretize_trace(trace, [CONST])
        ref = SignalRef(actuator="A", label="P")
        assert dt.initial[ref] == 0
        assert dt.changes[ref] == [(1.0, 1), (4.0, 0)]

    def test_hysteretic_monitor_keeps_band(self, trace):
        dt = discretize_trace(trace, [HYST])
        ref = SignalRef(actuator="A", label="P+-")
        assert dt.changes[ref] == [(2.0, 1), (4.0, 0)]
        assert dt.value_at(ref, 3.0) == 1

    def test_valve_timeline_copied(self, trace):
        dt = discretize_trace(trace, [CONST])
        assert dt.valve_initial == {"v": B}
        assert dt.valve_changes == {"v": [(2.0, U), (4.0, B)]}

    def test_unknown_actuator(self, trace):
        monitor = Monitor(actuator="Z", label="P", threshold=ConstantThreshold(level=1.0))
        with pytest.raises(InvalidMonitorError) as exc_info:
            discretize_trace(trace, [monitor])
        assert exc_info.value.exit_code == 3

    def test_empty_trace(self):
        with pytest.raises(InvalidInputError):
            discretize_trace(Trace(actuators=("A",), valves=()), [CONST])


class TestExtractSequence:
    """Tests for extract_sequence."""

    def test_combined_states(self, trace):
        dt = discretize_trace(trace, [CONST, HYST])
        assert extract_sequence(dt, 0.0) == [(0, 0), (1, 0), (1, 1)]

    def test_dwell_drops_short_segments(self, trace):
        dt = discretize_trace(trace, [CONST, HYST])
        assert extract_sequence(dt, 1.5) == [(1, 1)]

    def test_transient_between_switches_dropped(self):
        x = SignalRef(actuator="X", label="b")
        y = SignalRef(actuator="Y", label="b")
        dt = DiscreteTrace(
            signals=(x, y),
            initial={x: 0, y: 0},
            changes={x: [(1.0, 1)], y: [(1.01, 1)]},
            t_start=0.0,
            t_end=3.0,
        )
        assert extract_sequence(dt, 0.0) == [(0, 0), (1, 0), (1, 1)]
        assert extract_sequence(dt, 0.05) == [(0, 0), (1, 1)]

    def test_neighbours_merge_after_drop(self):
        states = [(0,), (1,), (0,)]
        dt = DiscreteTrace.from_sequence(states, dwell=1.0)
        dt.changes[dt.signals[0]] = [(1.0, 1), (1.02, 0)]
        assert extract_sequence(dt, 0.05) == [(0,)]

    def test_negative_dwell(self, trace):
        with pytest.raises(InvalidInputError):
            extract_sequence(discretize_trace(trace, [CONST]), -1.0)


class TestLogicCsv:
    """Tests for logic_to_csv."""

    def test_rows_at_changes(self, trace):
        text = logic_to_csv(discretize_trace(trace, [CONST]))
        assert text == "t,A[P]\n0.0,0\n1.0,1\n4.0,0\n"

    def test_write(self, trace, tmp_path):
        path = write_logic_csv(discretize_trace(trace, [CONST, HYST]), tmp_path / "x.csv")
        assert path.read_text().splitlines()[0] == "t,A[P],A[P+-]"
