"""
Gate-network synthesis from truth charts.

Every output signal is realized by one valve reading one input signal
(NOT or BUFFER, constant or hysteretic threshold), or optionally by a
constant vent. Outputs are independent, so the search enumerates the valid
options per output and combines them; results are ranked by valve count,
then by the number of hysteretic valves.
"""

from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from pneumalogic.config import get_logger
from pneumalogic.exceptions import InconsistentChartError, InvalidInputError
from pneumalogic.models.chart import (
    ChoiceKind,
    GateAssignment,
    GateChoice,
    StateTransitionChart,
    SynthesisProblem,
    TruthRow,
)
from pneumalogic.models.logic import (
    ConstantThreshold,
    GateKind,
    GateRelation,
    HystereticThreshold,
    LogicLevel,
)
from pneumalogic.models.trace import State
from pneumalogic.models.valve import ValveThreshold
from pneumalogic.services.logic_core import gate_target

logger = get_logger(__name__)


def _check_consistent(rows: Sequence[TruthRow]) -> None:
    seen: Dict[State, State] = {}
    for row in rows:
        previous = seen.setdefault(row.current, row.next)
        if previous != row.next:
            raise InconsistentChartError(
                f"State {''.join(map(str, row.current))} has two successors: "
                f"{''.join(map(str, previous))} and {''.join(map(str, row.next))}",
                details={"current": row.current, "next": [previous, row.next]},
            )


def truth_rows(
    chart: StateTransitionChart, signals: Optional[Sequence[str]] = None
) -> List[TruthRow]:
    """
    Current -> next rows of a chart's cycle, projected on a signal subset.

    Projection can make consecutive states equal; those rows are kept
    (the state must hold). Duplicate rows collapse.

    Args:
        chart: Cyclic chart.
        signals: Signal names (``A[l]`` or actuator ids); all when omitted.

    Raises:
        InconsistentChartError: If a projected state has two successors.
        InvalidInputError: If a signal is not part of the chart.
    """
    try:
        indices = (
            list(range(len(chart.signals)))
            if signals is None
            else [chart.signal_index(s) for s in signals]
        )
    except KeyError as e:
        raise InvalidInputError(
            f"Unknown chart signal {e.args[0]}", details={"chart": chart.name}
        ) from e
    states = [tuple(s[i] for i in indices) for s in chart.cycle_states]
    rows: List[TruthRow] = []
    for current, nxt in zip(states, states[1:] + states[:1]):
        row = TruthRow(current=current, next=nxt)
        if row not in rows:
            rows.append(row)
    _check_consistent(rows)
    return rows


def problem_from_chart(
    chart: StateTransitionChart,
    signals: Optional[Sequence[str]] = None,
    allow_constant_vent: bool = False,
) -> SynthesisProblem:
    """
    Synthesis problem over the chart's actuators.

    Declared chart thresholds fix each signal's gate variant.

    Raises:
        InvalidInputError: If a signal is not part of the chart, or two
            selected signals observe the same actuator.
    """
    try:
        refs = (
            list(chart.signals)
            if signals is None
            else [chart.signals[chart.signal_index(s)] for s in signals]
        )
    except KeyError as e:
        raise InvalidInputError(
            f"Unknown chart signal {e.args[0]}", details={"chart": chart.name}
        ) from e
    actuators = [ref.actuator for ref in refs]
    if len(set(actuators)) != len(actuators):
        raise InvalidInputError(
            "Synthesis needs one signal per actuator", details={"signals": [str(r) for r in refs]}
        )
    thresholds = {
        ref.actuator: chart.thresholds[str(ref)] for ref in refs if str(ref) in chart.thresholds
    }
    return SynthesisProblem(
        signals=tuple(actuators),
        rows=tuple(truth_rows(chart, [str(r) for r in refs])),
        allow_constant_vent=allow_constant_vent,
        thresholds=thresholds,
    )


def _variants(problem: SynthesisProblem, signal: str) -> Tuple[bool, ...]:
    if signal in problem.thresholds:
        return (isinstance(problem.thresholds[signal], HystereticThreshold),)
    if problem.hysteretic_signals is not None:
        return (signal in problem.hysteretic_signals,)
    return (False, True)


def _relation(
    problem: SynthesisProblem, kind: ChoiceKind, source: str, output: str
) -> GateRelation:
    """NOT/BUFFER relation a candidate choice stands for."""
    threshold = problem.thresholds.get(source, ConstantThreshold(level=0.0))
    gate_kind = GateKind.NOT if kind is ChoiceKind.NOT else GateKind.BUFFER
    return GateRelation(kind=gate_kind, input=source, output=output, input_threshold=threshold)


def output_options(problem: SynthesisProblem, output: int) -> List[GateChoice]:
    """Every choice for one output that reproduces all rows."""
    name = problem.signals[output]
    targets = [row.next[output] for row in problem.rows]
    options: List[GateChoice] = []
    if problem.allow_constant_vent:
        if all(t == 0 for t in targets):
            options.append(GateChoice(output=name, kind=ChoiceKind.VENT_OPEN))
        if all(t == 1 for t in targets):
            options.append(GateChoice(output=name, kind=ChoiceKind.VENT_CLOSED))
    for i, source in enumerate(problem.signals):
        inputs = [LogicLevel.of(row.current[i]) for row in problem.rows]
        for kind in (ChoiceKind.NOT, ChoiceKind.BUFFER):
            gate = _relation(problem, kind, source, name)
            if [gate_target(gate, level).bit(0) for level in inputs] != targets:
                continue
            for hysteretic in _variants(problem, source):
                options.append(
                    GateChoice(output=name, kind=kind, input=source, hysteretic=hysteretic)
                )
    return options


def synthesize(problem: SynthesisProblem) -> List[GateAssignment]:
    """
    All gate assignments that reproduce a truth chart.

    Args:
        problem: Truth chart and gate library options.

    Returns:
        Assignments sorted by (valve count, hysteretic valve count, text);
        empty when the chart is unsatisfiable.

    Raises:
        InconsistentChartError: If two rows share a current state but not
            the next state.
    """
    _check_consistent(problem.rows)
    per_output = [output_options(problem, o) for o in range(len(problem.signals))]
    empty = [problem.signals[o] for o, opts in enumerate(per_output) if not opts]
    if empty:
        logger.info(f"Truth chart unsatisfiable: no gate drives {', '.join(empty)}")
        return []
    results = sorted(
        (GateAssignment(choices=combo) for combo in product(*per_output)),
        key=GateAssignment.rank_key,
    )
    logger.info(
        f"Synthesis found {len(results)} assignments "
        f"({' x '.join(str(len(o)) for o in per_output)} options per output)"
    )
    return results


# =============================================================================
# Rendering
# =============================================================================


def _threshold_keys(signal: str, threshold: Optional[ValveThreshold], hysteretic: bool) -> str:
    if threshold is None:
        return f"low=P_{signal}- high=P_{signal}+" if hysteretic else f"threshold=P_{signal}"
    if isinstance(threshold, HystereticThreshold):
        return f"low={threshold.low!r} high={threshold.high!r}"
    return f"threshold={threshold.level!r}"


def render_valve_lines(
    assignment: GateAssignment, thresholds: Optional[Dict[str, ValveThreshold]] = None
) -> List[str]:
    """
    Netlist ``valve`` lines realizing an assignment.

    Undeclared thresholds are rendered as ``P_<signal>`` placeholders;
    constant vents become comments.
    """
    thresholds = thresholds or {}
    lines: List[str] = []
    for choice in assignment.choices:
        kind = choice.valve_kind
        if kind is None:
            state = "open" if choice.kind is ChoiceKind.VENT_OPEN else "closed"
            lines.append(f"# {choice.output}: no valve, vent={state}")
            continue
        assert choice.input is not None
        keys = _threshold_keys(choice.input, thresholds.get(choice.input), choice.hysteretic)
        lines.append(
            f"valve v_{choice.output} kind={kind.value} sense={choice.input} {keys} "
            f"controls={choice.output}"
        )
    return lines


def render_assignments(
    assignments: Sequence[GateAssignment], thresholds: Optional[Dict[str, ValveThreshold]] = None
) -> str:
    """Ranked netlist fragments, one block per assignment."""
    blocks = []
    for rank, assignment in enumerate(assignments, start=1):
        header = (
            f"# assignment {rank}: {assignment} "
            f"(valves={assignment.valve_count}, hysteretic={assignment.hysteretic_count})"
        )
        blocks.append("\n".join([header] + render_valve_lines(assignment, thresholds)))
    return "\n\n".join(blocks) + ("\n" if blocks else "")
