"""
Data models for pneumalogic.

Pydantic models (and a few hot-path dataclasses) shared by the logic core,
valve mechanics, simulator, netlist tooling and verifier.
"""

from pneumalogic.models.chart import (
    ChoiceKind,
    GateAssignment,
    GateChoice,
    StateTransitionChart,
    SynthesisProblem,
    TruthRow,
    VerificationReport,
)
from pneumalogic.models.circuit import ActuatorModel, CircuitModel, Monitor, VentLaw, VentState
from pneumalogic.models.logic import (
    CompositeThreshold,
    ConstantThreshold,
    GateKind,
    GateRelation,
    HystereticThreshold,
    HystMemory,
    LogicLevel,
    PairThreshold,
    ThresholdSpec,
)
from pneumalogic.models.trace import (
    DiscreteTrace,
    EventRecord,
    SignalRef,
    SimConfig,
    State,
    Trace,
    TraceSample,
)
from pneumalogic.models.valve import (
    FlowStatus,
    SliderCrankGeometry,
    ValveFlowState,
    ValveKind,
    ValveSpec,
)

__all__ = [
    # Logic
    "LogicLevel",
    "ConstantThreshold",
    "PairThreshold",
    "HystereticThreshold",
    "CompositeThreshold",
    "ThresholdSpec",
    "HystMemory",
    "GateKind",
    "GateRelation",
    # Valves
    "ValveKind",
    "ValveSpec",
    "FlowStatus",
    "ValveFlowState",
    "SliderCrankGeometry",
    # Circuit
    "ActuatorModel",
    "CircuitModel",
    "Monitor",
    "VentLaw",
    "VentState",
    # Trace
    "SimConfig",
    "Trace",
    "TraceSample",
    "EventRecord",
    "SignalRef",
    "State",
    "DiscreteTrace",
    # Charts
    "StateTransitionChart",
    "VerificationReport",
    "TruthRow",
    "SynthesisProblem",
    "ChoiceKind",
    "GateChoice",
    "GateAssignment",
]
