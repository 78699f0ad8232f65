"""
Verification of state sequences against cyclic state transition charts.
"""

from typing import Dict, List, Optional, Sequence, Tuple

from pneumalogic.config import get_logger
from pneumalogic.exceptions import InsufficientDataError, InvalidInputError
from pneumalogic.models.chart import StateTransitionChart, VerificationReport
from pneumalogic.models.trace import SignalRef, State

logger = get_logger(__name__)

DEFAULT_MIN_CYCLES = 2


def _first_mismatch(seq: Sequence[State], cycle: List[State], phase: int) -> Optional[int]:
    n = len(cycle)
    for i, state in enumerate(seq):
        if tuple(state) != cycle[(phase + i) % n]:
            return i
    return None


def verify(
    seq: Sequence[State],
    chart: StateTransitionChart,
    min_cycles: int = DEFAULT_MIN_CYCLES,
) -> VerificationReport:
    """
    Check that a state sequence follows a chart's cycle.

    The sequence may start at any phase of the cycle (rotation) but must
    follow its direction (no reflection). It passes when every state matches
    and it covers at least ``min_cycles`` full cycles.

    Args:
        seq: Extracted state sequence.
        chart: Expected cyclic chart.
        min_cycles: Number of complete cycles required to pass.

    Returns:
        VerificationReport; failing reports carry the first mismatch.

    Raises:
        InvalidInputError: If a state's arity differs from the chart's.
        InsufficientDataError: If the sequence is shorter than one cycle.
    """
    arity = len(chart.signals)
    for i, state in enumerate(seq):
        if len(state) != arity:
            raise InvalidInputError(
                f"State {i} has {len(state)} bits, chart {chart.name} has {arity} signals",
                details={"index": i, "state": tuple(state)},
            )
    cycle = chart.cycle_states
    n = len(cycle)
    if len(seq) < n:
        raise InsufficientDataError(
            f"Sequence of {len(seq)} states is shorter than one cycle of {chart.name} ({n})",
            details={"sequence_length": len(seq), "cycle_length": n},
        )

    covered = len(seq) / n
    base = dict(chart=chart.name, sequence_length=len(seq), cycles_covered=covered)
    first = tuple(seq[0])
    phases = [j for j, state in enumerate(cycle) if state == first]
    if not phases:
        report = VerificationReport(
            passed=False,
            mismatch_index=0,
            got=first,
            reason="first state is not part of the chart",
            **base,
        )
        logger.info(f"Verification against {chart.name}: FAIL (unknown first state)")
        return report

    # Charts may revisit a state; keep the phase that matches longest.
    candidates: List[Tuple[int, Optional[int]]] = [
        (j, _first_mismatch(seq, cycle, j)) for j in phases
    ]
    phase, mismatch = max(candidates, key=lambda c: len(seq) if c[1] is None else c[1])

    if mismatch is not None:
        expected = cycle[(phase + mismatch) % n]
        report = VerificationReport(
            passed=False,
            phase=phase,
            mismatch_index=mismatch,
            expected=expected,
            got=tuple(seq[mismatch]),
            expected_name=chart.cycle[(phase + mismatch) % n],
            reason="sequence diverges from the chart",
            **base,
        )
    elif covered < min_cycles:
        report = VerificationReport(
            passed=False,
            phase=phase,
            reason=f"insufficient coverage: {covered:g} of {min_cycles} cycles",
            **base,
        )
    else:
        report = VerificationReport(passed=True, phase=phase, **base)

    logger.info(
        f"Verification against {chart.name}: {'PASS' if report.passed else 'FAIL'} "
        f"({len(seq)} states, {covered:g} cycles)"
    )
    return report


def chart_from_cycle(
    name: str, signals: Sequence[SignalRef], cycle: Sequence[State]
) -> StateTransitionChart:
    """
    Build a chart from a cycle of states.

    States are named ``S0, S1, ...`` in order of first appearance; a state
    the cycle revisits keeps its first name.
    """
    states: Dict[State, str] = {}
    for state in cycle:
        states.setdefault(tuple(state), f"S{len(states)}")
    return StateTransitionChart(
        name=name,
        signals=tuple(signals),
        states={nm: bits for bits, nm in states.items()},
        cycle=tuple(states[tuple(state)] for state in cycle),
    )
