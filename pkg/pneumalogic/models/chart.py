"""
State-machine data models.

This module defines the Pydantic models of the discrete layer: the cyclic
state transition chart a gait must follow, the verification report, and
the truth-chart synthesis problem with its gate assignments.
"""

from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from pneumalogic.models.trace import SignalRef, State
from pneumalogic.models.valve import ValveKind, ValveThreshold


class StateTransitionChart(BaseModel):
    """
    Cyclic finite-state specification over labeled logic signals.

    Attributes:
        name: Chart name.
        signals: Ordered signal references, e.g. ``M[P_M] R[P_R] F[P_F]``.
        states: Named bit-vectors over ``signals``.
        cycle: State names, interpreted cyclically.
        thresholds: Optional declared threshold per signal.
    """

    model_config = ConfigDict(frozen=True)

    name: str = Field(..., min_length=1)
    signals: Tuple[SignalRef, ...] = Field(..., min_length=1)
    states: Dict[str, State]
    cycle: Tuple[str, ...] = Field(..., min_length=1)
    thresholds: Dict[str, ValveThreshold] = Field(default_factory=dict)

    @model_validator(mode="after")
    def validate_chart(self) -> "StateTransitionChart":
        arity = len(self.signals)
        for name, bits in self.states.items():
            if len(bits) != arity:
                raise ValueError(f"state {name} has {len(bits)} bits, expected {arity}")
            if any(b not in (0, 1) for b in bits):
                raise ValueError(f"state {name} has non-binary bits")
        vectors = list(self.states.values())
        if len(set(vectors)) != len(vectors):
            raise ValueError("chart states must be distinct")
        for name in self.cycle:
            if name not in self.states:
                raise ValueError(f"cycle references undeclared state {name}")
        if len(self.cycle) > 1:
            for a, b in zip(self.cycle, self.cycle[1:] + self.cycle[:1]):
                if self.states[a] == self.states[b]:
                    raise ValueError(f"consecutive cycle states {a} and {b} are identical")
        signal_names = {str(s) for s in self.signals}
        for key in self.thresholds:
            if key not in signal_names:
                raise ValueError(f"threshold declared for unknown signal {key}")
        return self

    @property
    def cycle_states(self) -> List[State]:
        return [self.states[name] for name in self.cycle]

    def state_name(self, bits: State) -> Optional[str]:
        for name, vector in self.states.items():
            if vector == bits:
                return name
        return None

    def signal_index(self, signal: str) -> int:
        for i, ref in enumerate(self.signals):
            if str(ref) == signal or ref.actuator == signal:
                return i
        raise KeyError(signal)


class VerificationReport(BaseModel):
    """
    Outcome of checking a state sequence against a chart.

    Attributes:
        chart: Chart name.
        passed: Whether the sequence follows the chart cyclically.
        phase: Index into the chart cycle aligned with the first sequence state.
        cycles_covered: Sequence length divided by the cycle length.
        mismatch_index: First diverging sequence position (failures only).
        expected: Expected state at the mismatch.
        got: Observed state at the mismatch.
        reason: Short failure reason.
    """

    chart: str
    passed: bool
    phase: Optional[int] = None
    cycles_covered: float = 0.0
    sequence_length: int = 0
    mismatch_index: Optional[int] = None
    expected: Optional[State] = None
    got: Optional[State] = None
    expected_name: Optional[str] = None
    reason: Optional[str] = None

    def render(self) -> str:
        """Human-readable pass/fail report."""
        if self.passed:
            return (
                f"PASS chart={self.chart} states={self.sequence_length} "
                f"cycles={self.cycles_covered:g} phase={self.phase}"
            )
        lines = [f"FAIL chart={self.chart} states={self.sequence_length}: {self.reason}"]
        if self.mismatch_index is not None:
            exp = "".join(map(str, self.expected or ()))
            got = "".join(map(str, self.got or ()))
            name = f" ({self.expected_name})" if self.expected_name else ""
            lines.append(f"  first mismatch at index {self.mismatch_index}: "
                         f"expected {exp}{name}, got {got}")
        return "\n".join(lines)


# =============================================================================
# Synthesis
# =============================================================================


class TruthRow(BaseModel):
    """One (current state -> next state) requirement."""

    model_config = ConfigDict(frozen=True)

    current: State
    next: State


class ChoiceKind(str, Enum):
    """Per-output options considered by the synthesizer."""

    NOT = "NOT"
    BUFFER = "BUFFER"
    VENT_OPEN = "VENT_OPEN"
    VENT_CLOSED = "VENT_CLOSED"


class SynthesisProblem(BaseModel):
    """
    Truth chart to realize with one valve (or constant vent) per output.

    Attributes:
        signals: Signal ids; each is both an input and an output.
        rows: Current -> next requirements over ``signals``.
        hysteretic_signals: Signals whose logic level is hysteretic; None
            leaves the gate variant free.
        allow_constant_vent: Also consider valve-free constant vents.
        thresholds: Declared thresholds, used to render netlist lines.
    """

    model_config = ConfigDict(frozen=True)

    signals: Tuple[str, ...] = Field(..., min_length=1)
    rows: Tuple[TruthRow, ...] = Field(..., min_length=1)
    hysteretic_signals: Optional[FrozenSet[str]] = None
    allow_constant_vent: bool = False
    thresholds: Dict[str, ValveThreshold] = Field(default_factory=dict)

    @model_validator(mode="after")
    def validate_arity(self) -> "SynthesisProblem":
        arity = len(self.signals)
        for row in self.rows:
            if len(row.current) != arity or len(row.next) != arity:
                raise ValueError(f"row {row.current}->{row.next} does not match {arity} signals")
        return self


class GateChoice(BaseModel):
    """
    Realization chosen for one output signal.

    Attributes:
        output: Output signal id.
        kind: NOT, BUFFER or a constant vent.
        input: Input signal id (gates only).
        hysteretic: Whether the valve is a hysteretic kind.
    """

    model_config = ConfigDict(frozen=True)

    output: str
    kind: ChoiceKind
    input: Optional[str] = None
    hysteretic: bool = False

    @property
    def valve_kind(self) -> Optional[ValveKind]:
        if self.kind is ChoiceKind.NOT:
            return ValveKind.HNC if self.hysteretic else ValveKind.NC
        if self.kind is ChoiceKind.BUFFER:
            return ValveKind.HNO if self.hysteretic else ValveKind.NO
        return None

    def __str__(self) -> str:
        if self.valve_kind is None:
            state = "open" if self.kind is ChoiceKind.VENT_OPEN else "closed"
            return f"{self.output}'=vent_{state}"
        suffix = "_hyst" if self.hysteretic else ""
        return f"{self.output}'={self.kind.value}{suffix}({self.input})"


class GateAssignment(BaseModel):
    """A complete assignment: one choice per output signal, in signal order."""

    model_config = ConfigDict(frozen=True)

    choices: Tuple[GateChoice, ...]

    @computed_field  # type: ignore[prop-decorator]
    @property
    def valve_count(self) -> int:
        return sum(1 for c in self.choices if c.valve_kind is not None)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def hysteretic_count(self) -> int:
        return sum(1 for c in self.choices if c.hysteretic)

    def rank_key(self) -> Tuple[int, int, str]:
        return (self.valve_count, self.hysteretic_count, str(self))

    def choice_for(self, output: str) -> GateChoice:
        for choice in self.choices:
            if choice.output == output:
                return choice
        raise KeyError(output)

    def __str__(self) -> str:
        return ", ".join(str(c) for c in self.choices)
