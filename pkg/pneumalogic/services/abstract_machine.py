"""
Discrete abstraction of a circuit's dynamics.

Each actuator's pressure is reduced to a position on its threshold ladder
(every monitor and gate threshold on that actuator, ascending). Stepping is
synchronous: every actuator computes its gate target from the current state
and moves one ladder level toward it, then hysteretic memories update. The
machine is finite and deterministic, so every run ends in a cycle; that
cycle of monitor states is the oracle the continuous simulation must match.
"""

from bisect import bisect_right
from dataclasses import dataclass, field
from math import prod
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from pneumalogic.config import get_logger
from pneumalogic.exceptions import InvalidInputError, NonPeriodicError
from pneumalogic.models.chart import StateTransitionChart
from pneumalogic.models.circuit import CircuitModel, VentState
from pneumalogic.models.logic import (
    CompositeThreshold,
    ConstantThreshold,
    GateRelation,
    HystereticThreshold,
    HystMemory,
)
from pneumalogic.models.trace import SignalRef, State
from pneumalogic.netlist.abstraction import abstract
from pneumalogic.services.logic_core import gate_target, hysteretic_level, make_level
from pneumalogic.services.verifier import chart_from_cycle

logger = get_logger(__name__)

Single = Union[ConstantThreshold, HystereticThreshold]
MemoryKey = Tuple[str, HystereticThreshold]

#: Step budget, as a multiple of the state-space size.
STEP_BOUND_FACTOR = 10


@dataclass(frozen=True)
class MachineState:
    """
    Full state of an abstract machine.

    Attributes:
        positions: Ladder position per actuator (0 = below every threshold).
        memories: Hysteretic memory bit per memory key.
    """

    positions: Tuple[int, ...]
    memories: Tuple[int, ...] = ()


@dataclass
class MachineRun:
    """
    Result of running an abstract machine into its limit cycle.

    Attributes:
        signals: Signal order of the states in ``cycle``.
        cycle: Distinct consecutive monitor states of the limit cycle,
            starting at the state where the cycle was entered.
        deadlock: Whether the limit cycle is a fixed point.
        entry: Trajectory index at which the cycle starts.
        steps: Steps taken until the cycle closed.
        trajectory: Full states from the initial state up to the closing step.
    """

    signals: Tuple[SignalRef, ...]
    cycle: List[State]
    deadlock: bool
    entry: int
    steps: int
    trajectory: List[MachineState] = field(default_factory=list)

    @property
    def period(self) -> int:
        """Number of full states in the limit cycle."""
        return len(self.trajectory) - self.entry

    def to_chart(self, name: str) -> StateTransitionChart:
        """Chart whose cycle is this run's monitor-state cycle."""
        return chart_from_cycle(name, self.signals, self.cycle)


class AbstractMachine:
    """
    Synchronous one-level-per-step abstraction of a gate network.

    Args:
        gates: Gate relations; each actuator is the output of at most one gate.
        signals: Observed signals with their thresholds. Defaults to the
            thresholds the gates read, grouped by actuator.
        vents: Constant vents of actuators no gate drives. Undeclared
            actuators without a gate vent open.
        initial_memory: Initial memory per (actuator, hysteretic threshold).
        p0: Initial pressure per actuator, used by ``initial_state``.

    Raises:
        InvalidInputError: If two gates drive the same actuator.
    """

    def __init__(
        self,
        gates: Sequence[GateRelation],
        signals: Optional[Sequence[Tuple[SignalRef, Single]]] = None,
        vents: Optional[Mapping[str, VentState]] = None,
        initial_memory: Optional[Mapping[MemoryKey, int]] = None,
        p0: Optional[Mapping[str, float]] = None,
    ):
        self.gates = tuple(gates)
        self._driver: Dict[str, GateRelation] = {}
        for gate in self.gates:
            if gate.output in self._driver:
                raise InvalidInputError(
                    f"Actuator {gate.output} is driven by two gates",
                    details={"gates": [str(self._driver[gate.output]), str(gate)]},
                )
            self._driver[gate.output] = gate

        self.signals: Tuple[Tuple[SignalRef, Single], ...] = tuple(
            signals if signals is not None else self._default_signals()
        )
        self.vents: Dict[str, VentState] = dict(vents or {})
        self._p0: Dict[str, float] = dict(p0 or {})
        self._initial_memory: Dict[MemoryKey, int] = dict(initial_memory or {})

        order: List[str] = []
        for gate in self.gates:
            for actuator in (gate.output, gate.input):
                if actuator not in order:
                    order.append(actuator)
        for ref, _ in self.signals:
            if ref.actuator not in order:
                order.append(ref.actuator)
        self.actuators: Tuple[str, ...] = tuple(order)
        self._index = {a: i for i, a in enumerate(self.actuators)}

        thresholds: Dict[str, List[Single]] = {a: [] for a in self.actuators}
        for gate in self.gates:
            thresholds[gate.input].extend(gate.input_threshold.components())
        for ref, threshold in self.signals:
            thresholds[ref.actuator].append(threshold)

        self.ladders: Dict[str, Tuple[float, ...]] = {
            a: tuple(sorted({lvl for t in ts for lvl in t.levels()}))
            for a, ts in thresholds.items()
        }
        keys: List[MemoryKey] = []
        for actuator, ts in thresholds.items():
            for t in ts:
                if isinstance(t, HystereticThreshold) and (actuator, t) not in keys:
                    keys.append((actuator, t))
        self.memory_keys: Tuple[MemoryKey, ...] = tuple(keys)
        self._memory_index = {k: i for i, k in enumerate(self.memory_keys)}

    @classmethod
    def from_circuit(cls, circuit: CircuitModel) -> "AbstractMachine":
        """Abstract a circuit; its monitors become the observed signals."""
        signals = [
            (SignalRef(actuator=m.actuator, label=m.label), m.threshold) for m in circuit.monitors
        ]
        vents = {a.id: a.vent for a in circuit.actuators if a.vent is not None}
        memory = {
            (v.sense, v.thresholds): v.init_memory
            for v in circuit.valves
            if isinstance(v.thresholds, HystereticThreshold)
        }
        return cls(
            abstract(circuit),
            signals=signals,
            vents=vents,
            initial_memory=memory,
            p0={a.id: a.p0 for a in circuit.actuators},
        )

    def _default_signals(self) -> List[Tuple[SignalRef, Single]]:
        order: List[str] = []
        for gate in self.gates:
            for actuator in (gate.output, gate.input):
                if actuator not in order:
                    order.append(actuator)
        read: Dict[str, List[Single]] = {a: [] for a in order}
        for gate in self.gates:
            if gate.read_threshold not in read[gate.input]:
                read[gate.input].append(gate.read_threshold)
        out: List[Tuple[SignalRef, Single]] = []
        for actuator in order:
            ts = sorted(read[actuator], key=lambda t: t.on_level)
            for i, t in enumerate(ts):
                label = f"P_{actuator}" + ("+-" if isinstance(t, HystereticThreshold) else "")
                if len(ts) > 1:
                    label += f"_{i}"
                out.append((SignalRef(actuator=actuator, label=label), t))
        return out

    # =========================================================================
    # State access
    # =========================================================================

    @property
    def signal_refs(self) -> Tuple[SignalRef, ...]:
        return tuple(ref for ref, _ in self.signals)

    @property
    def state_space_size(self) -> int:
        positions = prod(len(self.ladders[a]) + 1 for a in self.actuators)
        return positions * 2 ** len(self.memory_keys)

    def bit(self, state: MachineState, actuator: str, threshold: Single) -> int:
        """Logic level of ``actuator`` with respect to one threshold."""
        if isinstance(threshold, HystereticThreshold):
            return state.memories[self._memory_index[(actuator, threshold)]]
        position = state.positions[self._index[actuator]]
        return 1 if position > self.ladders[actuator].index(threshold.level) else 0

    def observe(self, state: MachineState) -> State:
        """Combined monitor state in signal order."""
        return tuple(self.bit(state, ref.actuator, t) for ref, t in self.signals)

    def _update_memories(
        self, positions: Tuple[int, ...], memories: Sequence[int]
    ) -> Tuple[int, ...]:
        updated = list(memories)
        for i, (actuator, threshold) in enumerate(self.memory_keys):
            ladder = self.ladders[actuator]
            position = positions[self._index[actuator]]
            if position >= ladder.index(threshold.high) + 1:
                updated[i] = 1
            elif position <= ladder.index(threshold.low):
                updated[i] = 0
        return tuple(updated)

    def initial_state(self, pressures: Optional[Mapping[str, float]] = None) -> MachineState:
        """
        Machine state for the given (or the configured initial) pressures.

        A pressure equal to a threshold sits above it. Hysteretic memories
        read the pressure itself with closed bounds, so a pressure equal to
        the low transition point clears the bit.
        """
        source = dict(self._p0)
        source.update(pressures or {})
        positions = tuple(
            bisect_right(self.ladders[a], source.get(a, 0.0)) for a in self.actuators
        )
        memories = tuple(
            hysteretic_level(
                threshold,
                HystMemory(bit=self._initial_memory.get((actuator, threshold), 0)),
                source.get(actuator, 0.0),
            )[0]
            for actuator, threshold in self.memory_keys
        )
        return MachineState(positions, memories)

    # =========================================================================
    # Dynamics
    # =========================================================================

    def _target(self, state: MachineState, actuator: str) -> int:
        top = len(self.ladders[actuator])
        gate = self._driver.get(actuator)
        if gate is None:
            return top if self.vents.get(actuator) is VentState.CLOSED else 0
        spec = gate.input_threshold
        bits = [self.bit(state, gate.input, part) for part in spec.components()]
        thermometer = not (
            isinstance(spec, CompositeThreshold)
            and any(isinstance(p, HystereticThreshold) for p in spec.parts)
        )
        level = make_level(tuple(reversed(bits)), thermometer=thermometer)
        return top if gate_target(gate, level).ones else 0

    def step(self, state: MachineState) -> MachineState:
        """Advance every actuator one ladder level toward its target."""
        positions = []
        for actuator, position in zip(self.actuators, state.positions):
            target = self._target(state, actuator)
            positions.append(position + (target > position) - (target < position))
        new_positions = tuple(positions)
        return MachineState(new_positions, self._update_memories(new_positions, state.memories))

    def run(self, initial: Optional[MachineState] = None) -> MachineRun:
        """
        Step from ``initial`` until a full state repeats.

        Raises:
            NonPeriodicError: If no state repeats within the step bound.
        """
        state = initial if initial is not None else self.initial_state()
        bound = STEP_BOUND_FACTOR * self.state_space_size
        seen: Dict[MachineState, int] = {}
        trajectory: List[MachineState] = []
        while state not in seen:
            if len(trajectory) > bound:
                raise NonPeriodicError(
                    f"No cycle within {bound} steps",
                    details={"bound": bound, "state_space": self.state_space_size},
                )
            seen[state] = len(trajectory)
            trajectory.append(state)
            state = self.step(state)

        entry = seen[state]
        cycle = _collapse_cycle([self.observe(s) for s in trajectory[entry:]])
        run = MachineRun(
            signals=self.signal_refs,
            cycle=cycle,
            deadlock=len(trajectory) - entry == 1,
            entry=entry,
            steps=len(trajectory),
            trajectory=trajectory,
        )
        if run.deadlock:
            logger.info(f"Abstract machine deadlocks after {entry} steps in state {cycle[0]}")
        else:
            logger.debug(
                f"Abstract machine cycle after {entry} steps: "
                f"{len(cycle)} monitor states, period {run.period}"
            )
        return run


def _collapse_cycle(states: List[State]) -> List[State]:
    out: List[State] = []
    for s in states:
        if not out or out[-1] != s:
            out.append(s)
    while len(out) > 1 and out[-1] == out[0]:
        out.pop()
    return out


def logic_simulate(
    machine: AbstractMachine, initial: Optional[MachineState] = None
) -> MachineRun:
    """
    Run an abstract machine into its limit cycle.

    Args:
        machine: Abstract machine.
        initial: Start state; the machine's configured initial state if omitted.

    Returns:
        MachineRun with the cycle of distinct monitor states; ``deadlock`` is
        set when the network settles in a fixed point.

    Raises:
        NonPeriodicError: If no cycle appears within ten times the state-space size.
    """
    return machine.run(initial)
