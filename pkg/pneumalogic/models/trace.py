"""
Simulation trace data models.

This module defines the simulation configuration, the analog trace the
hybrid simulator records, and the discretized logic trace derived from it.
Samples are plain dataclasses: a trace holds thousands of them and they are
built in the integrator's inner loop.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from pneumalogic.models.valve import FlowStatus


class SimConfig(BaseModel):
    """
    Simulation run configuration.

    Attributes:
        dt_max: Base integration step in seconds.
        t_end: Simulated horizon in seconds.
        event_tol: Crossing localization tolerance in psi.
        record_stride: Record one regular sample every ``record_stride`` steps.
    """

    model_config = ConfigDict(frozen=True)

    dt_max: float = Field(default=0.01, gt=0, allow_inf_nan=False, description="Base step (s)")
    t_end: float = Field(default=30.0, gt=0, allow_inf_nan=False, description="Horizon (s)")
    event_tol: float = Field(default=1e-6, gt=0, description="Crossing tolerance (psi)")
    record_stride: int = Field(default=10, ge=1, description="Steps per regular sample")


@dataclass(frozen=True)
class TraceSample:
    """
    One recorded instant of a simulation.

    Attributes:
        t: Time in seconds.
        pressures: Pressure per actuator (psi).
        statuses: Flow status per valve.
        memories: Bistable memory per hysteretic valve.
        event: Guards that fired at this instant (empty for regular samples).
    """

    t: float
    pressures: Dict[str, float]
    statuses: Dict[str, FlowStatus]
    memories: Dict[str, int]
    event: Tuple[str, ...] = ()

    @property
    def is_event(self) -> bool:
        return bool(self.event)


@dataclass(frozen=True)
class EventRecord:
    """
    A localized threshold crossing.

    Attributes:
        t: Event time in seconds.
        guard: Valve id, or ``<actuator>[<label>]`` for monitor crossings.
        actuator: Actuator whose pressure crossed.
        threshold: Crossed threshold value (psi).
        pressure: Pressure committed at the event sample (psi).
        switched: Whether a valve status or memory changed.
    """

    t: float
    guard: str
    actuator: str
    threshold: float
    pressure: float
    switched: bool


@dataclass
class Trace:
    """
    Time-ordered samples of a simulation run.

    Attributes:
        actuators: Actuator ids in declaration order.
        valves: Valve ids in declaration order.
        hysteretic_valves: Ids of valves with memory, in declaration order.
        samples: Samples with strictly increasing time.
        events: Localized crossings in time order.
    """

    actuators: Tuple[str, ...]
    valves: Tuple[str, ...]
    hysteretic_valves: Tuple[str, ...] = ()
    samples: List[TraceSample] = field(default_factory=list)
    events: List[EventRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def t_start(self) -> float:
        return self.samples[0].t if self.samples else 0.0

    @property
    def t_end(self) -> float:
        return self.samples[-1].t if self.samples else 0.0

    def times(self) -> np.ndarray:
        return np.array([s.t for s in self.samples], dtype=float)

    def pressure_series(self, actuator: str) -> np.ndarray:
        return np.array([s.pressures[actuator] for s in self.samples], dtype=float)

    def status_series(self, valve: str) -> np.ndarray:
        return np.array([s.statuses[valve].code for s in self.samples], dtype=int)

    def event_times(self, guard: Optional[str] = None) -> List[float]:
        return [e.t for e in self.events if guard is None or e.guard == guard]

    def append(self, sample: TraceSample) -> None:
        self.samples.append(sample)


class SignalRef(BaseModel):
    """
    Reference to one logic signal: a labeled monitor on an actuator.

    Attributes:
        actuator: Actuator id.
        label: Monitor label.
    """

    model_config = ConfigDict(frozen=True)

    actuator: str = Field(..., min_length=1)
    label: str = Field(..., min_length=1)

    @classmethod
    def parse(cls, text: str) -> "SignalRef":
        """Parse ``<actuator>[<label>]``."""
        head, sep, tail = text.partition("[")
        if not sep or not tail.endswith("]") or not head or len(tail) < 2:
            raise ValueError(f"signal must look like <actuator>[<label>], got {text!r}")
        return cls(actuator=head, label=tail[:-1])

    def __str__(self) -> str:
        return f"{self.actuator}[{self.label}]"


State = Tuple[int, ...]


@dataclass
class DiscreteTrace:
    """
    Piecewise-constant logic signals derived from an analog trace.

    The ordinal of a change in ``changes`` is the step index n of the
    gate relations' current/next notation.

    Attributes:
        signals: Signal references in column order.
        initial: Bit of each signal at ``t_start``.
        changes: Per signal, time-ordered ``(t, bit)`` changes.
        t_start: First sample time.
        t_end: Last sample time.
        valve_initial: Status of each valve at ``t_start``.
        valve_changes: Per valve, time-ordered ``(t, status)`` changes.
    """

    signals: Tuple[SignalRef, ...]
    initial: Dict[SignalRef, int]
    changes: Dict[SignalRef, List[Tuple[float, int]]]
    t_start: float
    t_end: float
    valve_initial: Dict[str, FlowStatus] = field(default_factory=dict)
    valve_changes: Dict[str, List[Tuple[float, FlowStatus]]] = field(default_factory=dict)

    def value_at(self, signal: SignalRef, t: float) -> int:
        """Bit of ``signal`` at time ``t`` (changes take effect at their timestamp)."""
        bit = self.initial[signal]
        for tc, value in self.changes[signal]:
            if tc > t:
                break
            bit = value
        return bit

    def state_at(self, t: float) -> State:
        return tuple(self.value_at(sig, t) for sig in self.signals)

    def change_times(self) -> List[float]:
        """All change timestamps across signals, sorted and unique."""
        return sorted({tc for sig in self.signals for tc, _ in self.changes[sig]})

    def segments(self) -> List[Tuple[float, float, State]]:
        """Maximal intervals ``[t0, t1)`` over which the combined state is constant."""
        bounds = [self.t_start] + [t for t in self.change_times() if t > self.t_start]
        bounds.append(self.t_end)
        out: List[Tuple[float, float, State]] = []
        for t0, t1 in zip(bounds, bounds[1:]):
            if t1 > t0:
                out.append((t0, t1, self.state_at(t0)))
        if not out:
            out.append((self.t_start, self.t_end, self.state_at(self.t_start)))
        return out

    @classmethod
    def from_sequence(
        cls,
        states: Sequence[State],
        signals: Optional[Sequence[SignalRef]] = None,
        dwell: float = 1.0,
    ) -> "DiscreteTrace":
        """
        Build a synthetic trace holding each state for ``dwell`` seconds.

        Args:
            states: Combined states in time order.
            signals: Signal references; generated as ``S<i>[b]`` when omitted.
            dwell: Duration of every state.

        Returns:
            DiscreteTrace spanning ``len(states) * dwell`` seconds.
        """
        if not states:
            raise ValueError("at least one state is required")
        arity = len(states[0])
        refs = tuple(signals) if signals else tuple(
            SignalRef(actuator=f"S{i}", label="b") for i in range(arity)
        )
        initial = {ref: states[0][i] for i, ref in enumerate(refs)}
        changes: Dict[SignalRef, List[Tuple[float, int]]] = {ref: [] for ref in refs}
        for k in range(1, len(states)):
            for i, ref in enumerate(refs):
                if states[k][i] != states[k - 1][i]:
                    changes[ref].append((k * dwell, states[k][i]))
        return cls(
            signals=refs,
            initial=initial,
            changes=changes,
            t_start=0.0,
            t_end=len(states) * dwell,
        )
