"""
Trace discretization and state-sequence extraction.

Turns an analog Trace into piecewise-constant logic signals (one per
monitor) and extracts the ordered sequence of combined states, dropping
transient states shorter than a dwell threshold.
"""

import csv
import io
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from pneumalogic.config import get_logger
from pneumalogic.exceptions import InvalidInputError, InvalidMonitorError
from pneumalogic.models.circuit import Monitor
from pneumalogic.models.logic import HystereticThreshold, HystMemory
from pneumalogic.models.trace import DiscreteTrace, SignalRef, State, Trace
from pneumalogic.models.valve import FlowStatus
from pneumalogic.services.logic_core import discretize_binary, hysteretic_step
from pneumalogic.utils.files import atomic_write_text

logger = get_logger(__name__)


def discretize_trace(trace: Trace, monitors: Sequence[Monitor]) -> DiscreteTrace:
    """
    Discretize every monitored actuator pressure of a trace.

    Constant monitors use ``discretize_binary``; hysteretic monitors run
    ``hysteretic_step`` from memory 0 through every sample in time order.
    Valve status timelines are copied from the trace.

    Args:
        trace: Analog trace (regular and event samples).
        monitors: Monitors in signal order.

    Returns:
        DiscreteTrace with one signal per monitor.

    Raises:
        InvalidMonitorError: If a monitor references an actuator missing from the trace.
        InvalidInputError: If the trace is empty.
    """
    if not trace.samples:
        raise InvalidInputError("Cannot discretize an empty trace")
    for monitor in monitors:
        if monitor.actuator not in trace.actuators:
            raise InvalidMonitorError(
                f"Monitor {monitor.signal} references unknown actuator {monitor.actuator}",
                details={"monitor": monitor.signal, "actuators": list(trace.actuators)},
            )

    signals = tuple(SignalRef(actuator=m.actuator, label=m.label) for m in monitors)
    initial: Dict[SignalRef, int] = {}
    changes: Dict[SignalRef, List[Tuple[float, int]]] = {ref: [] for ref in signals}

    for ref, monitor in zip(signals, monitors):
        threshold = monitor.threshold
        mem = HystMemory()
        bit: Optional[int] = None
        for sample in trace.samples:
            p = sample.pressures[monitor.actuator]
            if isinstance(threshold, HystereticThreshold):
                new_bit, mem = hysteretic_step(mem, p, threshold.low, threshold.high)
            else:
                new_bit = discretize_binary(p, threshold.level)
            if bit is None:
                initial[ref] = new_bit
            elif new_bit != bit:
                changes[ref].append((sample.t, new_bit))
            bit = new_bit

    first = trace.samples[0]
    valve_initial = dict(first.statuses)
    valve_changes: Dict[str, List[Tuple[float, FlowStatus]]] = {v: [] for v in trace.valves}
    for prev, sample in zip(trace.samples, trace.samples[1:]):
        for valve in trace.valves:
            if sample.statuses[valve] is not prev.statuses[valve]:
                valve_changes[valve].append((sample.t, sample.statuses[valve]))

    result = DiscreteTrace(
        signals=signals,
        initial=initial,
        changes=changes,
        t_start=trace.t_start,
        t_end=trace.t_end,
        valve_initial=valve_initial,
        valve_changes=valve_changes,
    )
    logger.debug(
        f"Discretized {len(signals)} signals: "
        f"{sum(len(c) for c in changes.values())} logic changes"
    )
    return result


def extract_sequence(dt: DiscreteTrace, dwell_min: float) -> List[State]:
    """
    Ordered combined states of a discrete trace.

    Segments shorter than ``dwell_min`` (the last, truncated segment
    included) are dropped, then adjacent duplicates are merged.

    Raises:
        InvalidInputError: If ``dwell_min`` is negative.
    """
    if dwell_min < 0:
        raise InvalidInputError("dwell_min must be >= 0", details={"dwell_min": dwell_min})
    sequence: List[State] = []
    dropped = 0
    for t0, t1, state in dt.segments():
        if t1 - t0 < dwell_min:
            dropped += 1
            continue
        if not sequence or sequence[-1] != state:
            sequence.append(state)
    if dropped:
        logger.debug(f"Dwell filter dropped {dropped} segments shorter than {dwell_min:g}s")
    return sequence


# =============================================================================
# Logic-signal CSV
# =============================================================================


def logic_to_csv(dt: DiscreteTrace) -> str:
    """
    Render a discrete trace as CSV (``t,<actuator>[<label>]...``).

    One row at the start time and one per change timestamp.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["t"] + [str(ref) for ref in dt.signals])
    times = [dt.t_start] + [t for t in dt.change_times() if t > dt.t_start]
    for t in times:
        writer.writerow([repr(float(t))] + [str(b) for b in dt.state_at(t)])
    return buffer.getvalue()


def write_logic_csv(dt: DiscreteTrace, path: Union[str, Path]) -> Path:
    """Write a discrete trace as CSV, atomically."""
    return atomic_write_text(path, logic_to_csv(dt))
