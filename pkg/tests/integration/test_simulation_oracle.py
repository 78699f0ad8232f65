"""
Integration tests: continuous simulation against the discrete abstraction.

These tests run full-horizon simulations of the reference circuits and
check them against closed-form switching times and the abstract machine.
Run with: pytest tests/integration/ -m integration -v
"""

import math

import pytest

from pneumalogic.models.circuit import ActuatorModel, CircuitModel, Monitor
from pneumalogic.models.logic import HystereticThreshold
from pneumalogic.models.trace import SimConfig
from pneumalogic.models.valve import ValveKind, ValveSpec
from pneumalogic.netlist import load_circuit
from pneumalogic.services.abstract_machine import AbstractMachine, logic_simulate
from pneumalogic.services.discretizer import discretize_trace, extract_sequence
from pneumalogic.services.pipeline import VerificationPipeline
from pneumalogic.services.simulator import simulate
from pneumalogic.services.verifier import verify

pytestmark = [pytest.mark.integration]

HORIZON = SimConfig(t_end=30.0)


def _sequence(circuit, cfg=HORIZON, dwell=0.05):
    trace = simulate(circuit, cfg)
    return extract_sequence(discretize_trace(trace, circuit.monitors), dwell)


def _oscillator(low: float, high: float) -> CircuitModel:
    band = HystereticThreshold(low=low, high=high)
    return CircuitModel(
        actuators=(ActuatorModel(id="A", fill_rate=1.0, vent_coeff=2.0),),
        valves=(ValveSpec(id="v_A", kind=ValveKind.HNC, thresholds=band, sense="A", controls="A"),),
        monitors=(Monitor(actuator="A", label="P_A+-", threshold=band),),
    )


def _band_sweep() -> CircuitModel:
    """A fills to 2.5 psi, vents down to 0.01 psi, and is read through a 0.05/1.8 band."""
    drive = HystereticThreshold(low=0.01, high=2.5)
    band = HystereticThreshold(low=0.05, high=1.8)
    return CircuitModel(
        actuators=(
            ActuatorModel(id="A", fill_rate=1.0, vent_coeff=1.0),
            ActuatorModel(id="B", fill_rate=1.0, vent_coeff=1.0),
        ),
        valves=(
            ValveSpec(id="v_A", kind=ValveKind.HNC, thresholds=drive, sense="A", controls="A"),
            ValveSpec(id="v_B", kind=ValveKind.HNO, thresholds=band, sense="A", controls="B"),
        ),
        monitors=(Monitor(actuator="A", label="P_A+-", threshold=band),),
    )


class TestCrawler:
    """The three-actuator crawler follows its gait chart."""

    @pytest.mark.timeout(120)
    def test_verification_passes(self, test_settings, circuits_dir, crawler_chart):
        result = VerificationPipeline(settings=test_settings).run(
            circuits_dir / "crawler.pneu", chart=crawler_chart, cfg=HORIZON
        )
        assert result.report.passed
        assert result.report.phase == 0
        assert result.report.cycles_covered >= 2

    def test_refinement_keeps_sequence_and_events(self, crawler_circuit):
        coarse = simulate(crawler_circuit, SimConfig(t_end=15.0, dt_max=0.01))
        fine = simulate(crawler_circuit, SimConfig(t_end=15.0, dt_max=0.005))
        for valve in ("NCV", "HNOV", "NOV"):
            assert coarse.event_times(valve) == pytest.approx(fine.event_times(valve), abs=1e-3)
        seq = [
            extract_sequence(discretize_trace(t, crawler_circuit.monitors), 0.05)
            for t in (coarse, fine)
        ]
        assert seq[0] == seq[1]

    def test_first_switching_times(self, crawler_circuit):
        trace = simulate(crawler_circuit, SimConfig(t_end=10.0))
        assert trace.event_times("NOV")[0] == pytest.approx(1.1, abs=1e-4)
        assert trace.event_times("HNOV")[0] == pytest.approx(1.8, abs=1e-4)
        assert trace.event_times("NCV")[0] == pytest.approx(4.1, abs=1e-4)
        assert trace.event_times("HNOV")[1] == pytest.approx(4.1 + math.log(4.1 / 0.05), abs=1e-3)


class TestAbstractMachineOracle:
    """Simulated sequences follow the abstract machine's limit cycle."""

    @pytest.mark.parametrize("name", ["crawler", "feet", "oscillator"])
    def test_simulation_matches_machine_cycle(self, circuits_dir, name):
        circuit = load_circuit(circuits_dir / f"{name}.pneu")
        run = logic_simulate(AbstractMachine.from_circuit(circuit))
        assert not run.deadlock
        report = verify(_sequence(circuit), run.to_chart(name))
        assert report.passed, report.render()

    def test_deadlock_matches_final_state(self, circuits_dir):
        circuit = load_circuit(circuits_dir / "not_gate.pneu")
        run = AbstractMachine.from_circuit(circuit).run()
        assert run.deadlock
        assert _sequence(circuit, SimConfig(t_end=10.0))[-1] == run.cycle[0]


class TestOscillatorPeriod:
    """Closed-form periods of the single-actuator hysteretic oscillator."""

    def test_first_and_steady_period(self, oscillator_circuit):
        trace = simulate(oscillator_circuit, HORIZON)
        falls = trace.event_times("v_A")[1::2]
        rises = trace.event_times("v_A")[0::2]
        assert falls[0] == pytest.approx(2.0 + math.log(4) / 2, rel=0.01)
        steady = 1.5 + math.log(4) / 2
        for a, b in zip(rises[1:], rises[2:]):
            assert b - a == pytest.approx(steady, rel=0.01)

    @pytest.mark.parametrize("low,high", [(0.5, 1.5), (0.5, 2.5), (0.25, 2.0)])
    def test_band_sweep(self, low, high):
        trace = simulate(_oscillator(low, high), SimConfig(t_end=20.0))
        rises = trace.event_times("v_A")[0::2]
        expected = (high - low) + math.log(high / low) / 2
        assert rises[2] - rises[1] == pytest.approx(expected, rel=0.01)


class TestHystereticBandSweep:
    """One rise through the band and one fall back out of it."""

    # Rise at 1 psi/s to 2.5 psi, then vent at 1/s down to 0.01 psi.
    T_END = 9.0

    @pytest.fixture
    def trace(self):
        return simulate(_band_sweep(), SimConfig(t_end=self.T_END))

    @pytest.mark.parametrize("guard", ["A[P_A+-]", "v_B"])
    def test_exactly_two_transitions(self, trace, guard):
        events = [e for e in trace.events if e.guard == guard]
        assert len(events) == 2
        up, down = events
        assert up.threshold == 1.8
        assert 1.8 <= up.pressure <= 1.8 + 1e-6
        assert down.threshold == 0.05
        assert 0.05 - 1e-6 <= down.pressure <= 0.05

    def test_transition_times(self, trace):
        up, down = trace.event_times("A[P_A+-]")
        assert up == pytest.approx(1.8, abs=1e-5)
        assert down == pytest.approx(2.5 + math.log(2.5 / 0.05), abs=1e-4)

    def test_sweep_covers_both_extremes(self, trace):
        drive = trace.event_times("v_A")
        assert drive[0] == pytest.approx(2.5, abs=1e-5)
        assert drive[1] == pytest.approx(2.5 + math.log(2.5 / 0.01), abs=1e-3)
        assert len(drive) == 2

    def test_discretized_sequence(self):
        circuit = _band_sweep()
        assert _sequence(circuit, SimConfig(t_end=self.T_END)) == [(0,), (1,), (0,)]


class TestTernaryLevels:
    """One actuator with two thresholds drives two valves in turn."""

    def test_sequence(self, circuits_dir):
        circuit = load_circuit(circuits_dir / "ternary.pneu")
        assert _sequence(circuit, SimConfig(t_end=6.0)) == [
            (0, 0, 0, 0),
            (0, 0, 1, 1),
            (1, 0, 1, 1),
            (1, 0, 0, 1),
            (1, 1, 0, 1),
            (1, 1, 0, 0),
        ]
