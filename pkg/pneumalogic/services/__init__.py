"""
Computation services for pneumalogic.

This module provides the functions and classes that implement the core logic:
- logic_core: pressure discretization and gate semantics
- valve_mechanics: valve flow states and slider-crank geometry
- simulator: hybrid event-driven simulation and trace CSV
- discretizer / verifier: logic signals, state sequences, chart checks
- abstract_machine: discrete oracle of a gate network
- synthesizer: gate assignments from truth charts
- pipeline: parse -> simulate -> discretize -> extract -> verify

Plotting lives in ``pneumalogic.services.plotting`` and is imported on demand.
"""

from pneumalogic.services.abstract_machine import (
    AbstractMachine,
    MachineRun,
    MachineState,
    logic_simulate,
)
from pneumalogic.services.discretizer import discretize_trace, extract_sequence, write_logic_csv
from pneumalogic.services.logic_core import (
    Ordering,
    compare_levels,
    discretize_binary,
    discretize_ternary,
    gate_target,
    hysteretic_step,
    legal_codes,
    truth_table,
)
from pneumalogic.services.pipeline import (
    BatchItem,
    PipelineResult,
    PipelineStatus,
    PipelineStep,
    StepResult,
    VerificationPipeline,
    simulate_batch,
)
from pneumalogic.services.simulator import (
    CircuitSimulator,
    derivative,
    estimate_thresholds,
    identify_switching_points,
    locate_crossing,
    read_trace_csv,
    simulate,
    write_trace_csv,
)
from pneumalogic.services.synthesizer import (
    problem_from_chart,
    render_assignments,
    synthesize,
    truth_rows,
)
from pneumalogic.services.valve_mechanics import (
    crank_angle,
    critical_distance,
    kink_blocked,
    valve_flow,
)
from pneumalogic.services.verifier import chart_from_cycle, verify

__all__ = [
    # Logic core
    "Ordering",
    "discretize_binary",
    "discretize_ternary",
    "hysteretic_step",
    "compare_levels",
    "legal_codes",
    "gate_target",
    "truth_table",
    # Valve mechanics
    "valve_flow",
    "crank_angle",
    "critical_distance",
    "kink_blocked",
    # Simulation
    "CircuitSimulator",
    "derivative",
    "locate_crossing",
    "simulate",
    "write_trace_csv",
    "read_trace_csv",
    "identify_switching_points",
    "estimate_thresholds",
    # Discrete layer
    "discretize_trace",
    "extract_sequence",
    "write_logic_csv",
    "verify",
    "chart_from_cycle",
    "AbstractMachine",
    "MachineState",
    "MachineRun",
    "logic_simulate",
    "truth_rows",
    "problem_from_chart",
    "synthesize",
    "render_assignments",
    # Pipeline
    "VerificationPipeline",
    "PipelineResult",
    "PipelineStatus",
    "PipelineStep",
    "StepResult",
    "BatchItem",
    "simulate_batch",
]
