"""
Unit tests for the discrete abstract machine.
"""

import pytest

from pneumalogic.exceptions import InvalidInputError, NonPeriodicError
from pneumalogic.models.logic import (
    ConstantThreshold,
    GateKind,
    GateRelation,
    HystereticThreshold,
    HystMemory,
)
from pneumalogic.netlist import load_circuit
from pneumalogic.services import abstract_machine
from pneumalogic.services.abstract_machine import AbstractMachine, logic_simulate
from pneumalogic.services.logic_core import hysteretic_step


def _not_gate(src: str, dst: str, level: float = 1.0) -> GateRelation:
    return GateRelation(
        kind=GateKind.NOT,
        input=src,
        output=dst,
        input_threshold=ConstantThreshold(level=level),
    )


class TestMachineConstruction:
    """Tests for ladders, memories and initial states."""

    def test_crawler_ladders(self, crawler_circuit):
        machine = AbstractMachine.from_circuit(crawler_circuit)
        assert machine.actuators == ("R", "F", "M")
        assert machine.ladders == {"R": (0.05, 1.1, 1.8), "F": (2.3,), "M": (1.5,)}
        assert len(machine.memory_keys) == 1
        assert machine.state_space_size == 4 * 2 * 2 * 2

    def test_two_gates_on_one_output(self):
        with pytest.raises(InvalidInputError):
            AbstractMachine([_not_gate("A", "B"), _not_gate("C", "B")])

    def test_default_signals(self):
        machine = AbstractMachine([_not_gate("A", "A")])
        assert [str(ref) for ref in machine.signal_refs] == ["A[P_A]"]

    def test_pressure_on_threshold_sits_above(self, circuits_dir):
        machine = AbstractMachine.from_circuit(load_circuit(circuits_dir / "not_gate.pneu"))
        state = machine.initial_state({"A": 1.0})
        assert machine.bit(state, "A", ConstantThreshold(level=1.0)) == 1

    @pytest.mark.parametrize(
        "p, held, expected",
        [(0.5, 1, 0), (0.4, 1, 0), (1.0, 1, 1), (1.0, 0, 0), (2.0, 0, 1), (2.5, 0, 1)],
    )
    def test_initial_memory_uses_closed_bounds(self, p, held, expected):
        band = HystereticThreshold(low=0.5, high=2.0)
        gate = GateRelation(kind=GateKind.NOT, input="A", output="A", input_threshold=band)
        machine = AbstractMachine([gate], initial_memory={("A", band): held})
        state = machine.initial_state({"A": p})
        assert state.memories == (expected,)
        assert hysteretic_step(HystMemory(bit=held), p, 0.5, 2.0)[0] == expected


class TestMachineRuns:
    """Limit cycles of the reference circuits."""

    def test_crawler_cycle(self, crawler_circuit, crawler_chart):
        run = logic_simulate(AbstractMachine.from_circuit(crawler_circuit))
        assert not run.deadlock
        assert run.entry == 0
        assert run.period == 8
        assert run.cycle == crawler_chart.cycle_states

    def test_crawler_run_converts_to_chart(self, crawler_circuit, crawler_chart):
        chart = logic_simulate(AbstractMachine.from_circuit(crawler_circuit)).to_chart("c")
        assert chart.signals == crawler_chart.signals
        assert chart.cycle == ("S0", "S1", "S2", "S3", "S4", "S5")
        assert chart.cycle_states == crawler_chart.cycle_states

    def test_feet_cycle(self, feet_circuit, feet_chart):
        run = logic_simulate(AbstractMachine.from_circuit(feet_circuit))
        assert run.cycle == [(0, 0), (1, 0), (1, 1), (0, 1)]
        assert run.cycle == feet_chart.cycle_states
        assert run.period == 6

    def test_self_inverting_gate_oscillates(self):
        run = AbstractMachine([_not_gate("A", "A")]).run()
        assert run.cycle == [(0,), (1,)]
        assert run.period == 2
        assert not run.deadlock

    def test_hysteretic_oscillator(self, oscillator_circuit):
        run = AbstractMachine.from_circuit(oscillator_circuit).run()
        assert run.entry == 0
        assert run.period == 4
        assert run.cycle == [(0,), (1,)]
        assert [s.positions for s in run.trajectory] == [(0,), (1,), (2,), (1,)]
        assert [s.memories for s in run.trajectory] == [(0,), (0,), (1,), (1,)]

    def test_not_gate_deadlocks(self, circuits_dir):
        machine = AbstractMachine.from_circuit(load_circuit(circuits_dir / "not_gate.pneu"))
        run = machine.run()
        assert run.deadlock
        assert run.cycle == [(1, 0)]
        assert run.entry == 2

    def test_positions_move_one_level_per_step(self, crawler_circuit):
        run = AbstractMachine.from_circuit(crawler_circuit).run()
        for before, after in zip(run.trajectory, run.trajectory[1:]):
            assert all(abs(a - b) <= 1 for a, b in zip(before.positions, after.positions))

    def test_step_bound(self, crawler_circuit, monkeypatch):
        monkeypatch.setattr(abstract_machine, "STEP_BOUND_FACTOR", 0)
        with pytest.raises(NonPeriodicError) as exc_info:
            AbstractMachine.from_circuit(crawler_circuit).run()
        assert exc_info.value.exit_code == 3
