"""
Hybrid simulation of valve-coupled actuator networks.

Each actuator is a lumped pressure state. While its vent is blocked it fills
at ``a_in``; while the vent is unblocked it vents through ``a_out`` (see
``VentLaw``). Valve statuses only change at threshold crossings, so the
dynamics are integrated with a fixed-step explicit RK4 scheme holding the
statuses constant, and every step that changes a guard's discrete state is
re-run with a bisection search for the crossing time. The state at the
crossing is recorded as an event sample, the valves are re-evaluated in
declaration order and integration resumes.

Guards are the valve thresholds (switching) and the monitor thresholds
(non-switching), so every logic change of a monitored signal has an event
sample at its exact time.
"""

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from pneumalogic.config import get_logger
from pneumalogic.exceptions import (
    InvalidInputError,
    NoCrossingError,
    SimulationDivergedError,
    SimulationStallError,
)
from pneumalogic.models.circuit import CircuitModel, VentLaw, VentState
from pneumalogic.models.logic import HystereticThreshold, HystMemory
from pneumalogic.models.trace import EventRecord, SimConfig, Trace, TraceSample
from pneumalogic.models.valve import FlowStatus, ValveSpec, ValveThreshold
from pneumalogic.services.logic_core import discretize_binary, hysteretic_step
from pneumalogic.services.valve_mechanics import valve_flow
from pneumalogic.utils.files import atomic_write_text

logger = get_logger(__name__)

#: Bisection iterations before a localization is declared stalled.
MAX_BISECTION_STEPS = 200
#: Events handled inside one base step before the run is declared stalled.
MAX_EVENTS_PER_STEP = 1000
#: Largest ``vent_coeff * dt_max``. Below it an RK4 step of the vent law is
#: monotone in its length, so a guard changes sign at most once per step.
MAX_STEP_STIFFNESS = 1.0


# =============================================================================
# Dynamics
# =============================================================================


def vent_status(
    circuit: CircuitModel, actuator_id: str, statuses: Mapping[str, FlowStatus]
) -> FlowStatus:
    """
    Status of an actuator's vent line.

    The controlling valve decides when there is one; otherwise the constant
    ``vent`` declaration applies, and an actuator with neither vents freely.
    """
    valve = circuit.controlling_valve(actuator_id)
    if valve is not None:
        return statuses[valve.id]
    declared = circuit.actuator(actuator_id).vent
    return (declared or VentState.OPEN).status


def derivative(
    circuit: CircuitModel,
    pressures: Mapping[str, float],
    valve_statuses: Mapping[str, FlowStatus],
) -> Dict[str, float]:
    """
    Pressure rates of every actuator.

    ``dp/dt = a_in`` while the vent is blocked. With the vent unblocked it is
    ``a_in - a_out * p`` under the leak law and ``-a_out * p`` under the dump
    law. A positive rate is clamped to 0 at the relief cap.

    Args:
        circuit: Circuit model.
        pressures: Pressure per actuator id (psi).
        valve_statuses: Flow status per valve id.

    Returns:
        Rate per actuator id (psi/s).
    """
    rates: Dict[str, float] = {}
    for actuator in circuit.actuators:
        p = pressures[actuator.id]
        if vent_status(circuit, actuator.id, valve_statuses) is FlowStatus.UNBLOCKED:
            supply = actuator.fill_rate if actuator.vent_law is VentLaw.LEAK else 0.0
            rate = supply - actuator.vent_coeff * p
        else:
            rate = actuator.fill_rate
        p_max = circuit.p_max_for(actuator.id)
        if p_max is not None and p >= p_max and rate > 0:
            rate = 0.0
        rates[actuator.id] = rate
    return rates


# =============================================================================
# Event localization
# =============================================================================


def locate_crossing(
    f: Callable[[float], float], t_lo: float, t_hi: float, tol: float
) -> float:
    """
    Locate a zero crossing of ``f`` on ``[t_lo, t_hi]`` by bisection.

    The bracket end ``t_hi`` keeps the sign of ``f(t_hi)``, so the returned
    time always lies on the same side of the crossing as ``t_hi``.
    Only the bracket ends are compared, so ``f`` must change sign at most
    once on the bracket.

    Args:
        f: Scalar function of time.
        t_lo: Bracket start.
        t_hi: Bracket end.
        tol: Tolerance on ``|f(t*)|``.

    Returns:
        ``t*`` in ``[t_lo, t_hi]`` with ``|f(t*)| <= tol``.

    Raises:
        NoCrossingError: If ``f(t_lo)`` and ``f(t_hi)`` have the same strict sign.
        SimulationStallError: If the bracket cannot be split any further.
    """
    if not tol > 0:
        raise InvalidInputError("Crossing tolerance must be > 0", details={"tol": tol})
    f_hi = f(t_hi)
    if f_hi == 0:
        return t_hi
    f_lo = f(t_lo)
    if f_lo * f_hi > 0:
        raise NoCrossingError(
            "No sign change on the bracket",
            details={"t_lo": t_lo, "t_hi": t_hi, "f_lo": f_lo, "f_hi": f_hi},
        )

    lo, hi = t_lo, t_hi
    positive = f_hi > 0
    for _ in range(MAX_BISECTION_STEPS):
        if abs(f_hi) <= tol:
            return hi
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        f_mid = f(mid)
        if (f_mid > 0) == positive and f_mid != 0:
            hi, f_hi = mid, f_mid
        else:
            lo = mid
    if abs(f_hi) <= tol:
        return hi
    raise SimulationStallError(
        "Crossing localization stalled before reaching the tolerance",
        details={"t_lo": lo, "t_hi": hi, "f_hi": f_hi, "tol": tol},
    )


# =============================================================================
# Simulator
# =============================================================================


@dataclass
class _Guard:
    """A threshold whose crossing is localized."""

    name: str
    actuator: int
    threshold: ValveThreshold
    valve: Optional[ValveSpec] = None

    @property
    def hysteretic(self) -> bool:
        return isinstance(self.threshold, HystereticThreshold)

    def level(self, bit: int, p: float) -> int:
        """Discrete state after observing ``p`` with previous state ``bit``."""
        if self.hysteretic:
            low, high = self.threshold.levels()
            return hysteretic_step(HystMemory(bit=bit), p, low, high)[0]
        return discretize_binary(p, self.threshold.levels()[0])

    def crossing(self, bit: int) -> Tuple[float, float]:
        """``(sign, threshold)`` such that ``sign * (p - threshold) > 0`` past the crossing."""
        levels = self.threshold.levels()
        if self.hysteretic:
            return (-1.0, levels[0]) if bit else (1.0, levels[1])
        return (-1.0, levels[0]) if bit else (1.0, levels[0])


class CircuitSimulator:
    """
    Fixed-step RK4 integrator with threshold event handling.

    A simulator owns the run state and produces one Trace; it is not reused
    across runs. Circuit and config are immutable, so independent simulators
    may run concurrently.

    Example:
        >>> trace = CircuitSimulator(circuit, SimConfig(t_end=30)).run()
        >>> len(trace.events)

    Raises:
        InvalidInputError: If ``vent_coeff * dt_max`` exceeds ``MAX_STEP_STIFFNESS``
            for some actuator.
    """

    def __init__(self, circuit: CircuitModel, cfg: Optional[SimConfig] = None) -> None:
        self.circuit = circuit
        self.cfg = cfg or SimConfig()

        actuators = circuit.actuators
        self._ids = tuple(a.id for a in actuators)
        self._index = {aid: i for i, aid in enumerate(self._ids)}
        self._fill = np.array([a.fill_rate for a in actuators], dtype=float)
        self._vent = np.array([a.vent_coeff for a in actuators], dtype=float)
        stiffest = float(self._vent.max(initial=0.0))
        if stiffest * self.cfg.dt_max > MAX_STEP_STIFFNESS:
            raise InvalidInputError(
                f"dt_max={self.cfg.dt_max:g}s is too coarse for vent_coeff={stiffest:g}/s; "
                f"vent_coeff * dt_max must not exceed {MAX_STEP_STIFFNESS:g}",
                details={
                    "dt_max": self.cfg.dt_max,
                    "vent_coeff": stiffest,
                    "limit": MAX_STEP_STIFFNESS,
                },
            )
        self._supply_open = np.array(
            [a.fill_rate if a.vent_law is VentLaw.LEAK else 0.0 for a in actuators], dtype=float
        )
        caps = [circuit.p_max_for(aid) for aid in self._ids]
        self._p_max = np.array([np.inf if c is None else c for c in caps], dtype=float)
        self._capped = np.isfinite(self._p_max)
        self._divergence = circuit.divergence_limit

        self._valves = circuit.valves
        self._hyst_ids = tuple(v.id for v in self._valves if v.kind.is_hysteretic)
        self._controller = [circuit.controlling_valve(aid) for aid in self._ids]
        self._constant_open = np.array(
            [(a.vent or VentState.OPEN) is VentState.OPEN for a in actuators], dtype=bool
        )

        self._guards: List[_Guard] = [
            _Guard(v.id, self._index[v.sense], v.thresholds, v) for v in self._valves
        ]
        self._guards += [
            _Guard(m.signal, self._index[m.actuator], m.threshold) for m in circuit.monitors
        ]

        self._statuses: Dict[str, FlowStatus] = {}
        self._memories: Dict[str, HystMemory] = {}
        self._bits: List[int] = []

    # =========================================================================
    # Integration
    # =========================================================================

    def _open_mask(self) -> np.ndarray:
        mask = self._constant_open.copy()
        for i, valve in enumerate(self._controller):
            if valve is not None:
                mask[i] = self._statuses[valve.id] is FlowStatus.UNBLOCKED
        return mask

    def _rates(self, p: np.ndarray, open_mask: np.ndarray) -> np.ndarray:
        rate = np.where(open_mask, self._supply_open - self._vent * p, self._fill)
        return np.where((p >= self._p_max) & (rate > 0), 0.0, rate)

    def _rk4(self, p: np.ndarray, h: float, open_mask: np.ndarray) -> np.ndarray:
        """One explicit RK4 step of size ``h`` with fixed vent statuses."""
        if h <= 0:
            return p.copy()
        k1 = self._rates(p, open_mask)
        k2 = self._rates(p + 0.5 * h * k1, open_mask)
        k3 = self._rates(p + 0.5 * h * k2, open_mask)
        k4 = self._rates(p + h * k3, open_mask)
        p_new = p + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        return np.clip(p_new, 0.0, self._p_max)

    # =========================================================================
    # Discrete state
    # =========================================================================

    def _evaluate(self, p: np.ndarray) -> List[str]:
        """
        Re-evaluate valves (declaration order) and monitors at pressures ``p``.

        Returns:
            Names of guards whose discrete state changed.
        """
        changed: List[str] = []
        for k, guard in enumerate(self._guards):
            p_sense = float(p[guard.actuator])
            new_bit = guard.level(self._bits[k], p_sense)
            if guard.valve is not None:
                state = valve_flow(guard.valve, p_sense, self._memories.get(guard.valve.id))
                self._statuses[guard.valve.id] = state.status
                if state.memory is not None:
                    self._memories[guard.valve.id] = state.memory
                    new_bit = state.memory.bit
            if new_bit != self._bits[k]:
                self._bits[k] = new_bit
                changed.append(guard.name)
        return changed

    @staticmethod
    def _initial_bit(guard: _Guard, p: np.ndarray) -> int:
        """Initial memory for hysteretic guards, initial level for constant ones."""
        if guard.hysteretic:
            return guard.valve.init_memory if guard.valve is not None else 0
        return discretize_binary(float(p[guard.actuator]), guard.threshold.levels()[0])

    def _triggered(self, p_new: np.ndarray) -> List[int]:
        return [
            k
            for k, guard in enumerate(self._guards)
            if guard.level(self._bits[k], float(p_new[guard.actuator])) != self._bits[k]
        ]

    def _localize(self, k: int, p0: np.ndarray, h: float, open_mask: np.ndarray) -> float:
        guard = self._guards[k]
        sign, thr = guard.crossing(self._bits[k])
        i = guard.actuator

        def f(tau: float) -> float:
            return sign * (float(self._rk4(p0, tau, open_mask)[i]) - thr)

        try:
            return locate_crossing(f, 0.0, h, self.cfg.event_tol)
        except (SimulationStallError, NoCrossingError) as e:
            raise SimulationStallError(
                f"Event localization stalled for guard {guard.name}",
                details={**e.details, "guard": guard.name},
            ) from e

    def _sample(self, t: float, p: np.ndarray, event: Sequence[str] = ()) -> TraceSample:
        return TraceSample(
            t=t,
            pressures={aid: float(p[i]) for i, aid in enumerate(self._ids)},
            statuses={v.id: self._statuses[v.id] for v in self._valves},
            memories={vid: self._memories[vid].bit for vid in self._hyst_ids},
            event=tuple(event),
        )

    def _record(self, trace: Trace, sample: TraceSample) -> None:
        if trace.samples and sample.t <= trace.samples[-1].t:
            if sample.is_event:
                trace.samples[-1] = sample
            return
        trace.append(sample)

    def _check_divergence(self, t: float, p: np.ndarray) -> None:
        if self._divergence is None:
            return
        over = (~self._capped) & (p > self._divergence)
        if over.any():
            i = int(np.argmax(over))
            raise SimulationDivergedError(
                f"Pressure of {self._ids[i]} diverged without a relief cap",
                details={
                    "actuator": self._ids[i],
                    "t": t,
                    "pressure": float(p[i]),
                    "limit": self._divergence,
                },
            )

    # =========================================================================
    # Run
    # =========================================================================

    def run(self) -> Trace:
        """
        Integrate the circuit from t = 0 to ``cfg.t_end``.

        Guards are tested at step ends only. The construction-time bound on
        ``vent_coeff * dt_max`` keeps each pressure monotone within a step,
        so a step never hides a crossing and its reversal.

        Returns:
            Trace with regular samples every ``record_stride`` steps, one
            sample per event, and the final state.

        Raises:
            SimulationStallError: If an event cannot be localized or events
                chatter inside one step.
            SimulationDivergedError: If an uncapped pressure exceeds the
                divergence limit.
        """
        cfg = self.cfg
        circuit = self.circuit
        trace = Trace(
            actuators=self._ids,
            valves=tuple(v.id for v in self._valves),
            hysteretic_valves=self._hyst_ids,
        )
        p = np.clip(
            np.array([a.p0 for a in circuit.actuators], dtype=float), 0.0, self._p_max
        )

        self._memories = {}
        for valve in self._valves:
            mem = valve.initial_memory
            if mem is not None:
                self._memories[valve.id] = mem
        self._bits = [self._initial_bit(guard, p) for guard in self._guards]
        self._statuses = {}
        self._evaluate(p)

        logger.info(
            f"Simulating {len(self._ids)} actuators, {len(self._valves)} valves "
            f"to t={cfg.t_end:g}s (dt={cfg.dt_max:g}s)"
        )
        self._record(trace, self._sample(0.0, p))

        n_steps = max(1, math.ceil(cfg.t_end / cfg.dt_max - 1e-9))
        for step in range(1, n_steps + 1):
            t_start = (step - 1) * cfg.dt_max
            t_grid = min(step * cfg.dt_max, cfg.t_end)
            t = t_start
            events_in_step = 0

            while True:
                h = t_grid - t
                open_mask = self._open_mask()
                p_new = self._rk4(p, h, open_mask)
                triggered = self._triggered(p_new)
                if not triggered:
                    p = p_new
                    t = t_grid
                    break

                events_in_step += 1
                if events_in_step > MAX_EVENTS_PER_STEP:
                    names = [self._guards[k].name for k in triggered]
                    raise SimulationStallError(
                        f"Guards {names} switch repeatedly within one step",
                        details={"guards": names, "t": t},
                    )

                taus = {k: self._localize(k, p, h, open_mask) for k in triggered}
                first = min(taus, key=lambda k: (taus[k], k))
                p_first = self._rk4(p, taus[first], open_mask)
                group = [
                    k
                    for k in triggered
                    if abs(
                        float(p_first[self._guards[k].actuator])
                        - self._guards[k].crossing(self._bits[k])[1]
                    )
                    <= cfg.event_tol
                ]
                tau = max(taus[k] for k in group)
                p = self._rk4(p, tau, open_mask)
                t = t + tau
                before = dict(self._statuses)
                changed = self._evaluate(p)
                if not changed:
                    raise SimulationStallError(
                        f"Event for guard {self._guards[first].name} changed no state",
                        details={"guard": self._guards[first].name, "t": t},
                    )
                self._record_events(trace, t, p, changed, before)
                self._record(trace, self._sample(t, p, changed))
                self._check_divergence(t, p)

            self._check_divergence(t, p)
            if step % cfg.record_stride == 0 or step == n_steps:
                self._record(trace, self._sample(t, p))

        logger.info(
            f"Simulation finished: {len(trace.events)} events, {len(trace.samples)} samples"
        )
        return trace

    def _record_events(
        self,
        trace: Trace,
        t: float,
        p: np.ndarray,
        changed: Sequence[str],
        before: Mapping[str, FlowStatus],
    ) -> None:
        by_name = {g.name: (k, g) for k, g in enumerate(self._guards)}
        for name in changed:
            k, guard = by_name[name]
            pressure = float(p[guard.actuator])
            # The crossing that produced the current bit is the opposite one.
            threshold = guard.crossing(1 - self._bits[k])[1]
            switched = guard.valve is not None
            if switched:
                logger.debug(
                    f"t={t:.6f}s valve {name}: {before.get(name)} -> "
                    f"{self._statuses[name].value} at p={pressure:.6f}"
                )
            trace.events.append(
                EventRecord(
                    t=t,
                    guard=name,
                    actuator=self._ids[guard.actuator],
                    threshold=threshold,
                    pressure=pressure,
                    switched=switched,
                )
            )


def simulate(circuit: CircuitModel, cfg: Optional[SimConfig] = None) -> Trace:
    """
    Simulate a circuit.

    Args:
        circuit: Validated circuit model.
        cfg: Simulation config; defaults to ``SimConfig()``.

    Returns:
        Recorded Trace.

    Raises:
        InvalidInputError: If the step is too coarse for the stiffest vent.
    """
    return CircuitSimulator(circuit, cfg).run()


# =============================================================================
# Trace CSV
# =============================================================================


def _fmt(value: float) -> str:
    """Shortest round-trip rendering of a float."""
    return repr(float(value))


def trace_to_csv(trace: Trace) -> str:
    """
    Render a trace as CSV text.

    Header: ``t,<actuator>.p...,<valve>.status...,<valve>.mem...``; status is
    0 = blocked, 1 = unblocked; memory columns exist for hysteretic valves only.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(
        ["t"]
        + [f"{a}.p" for a in trace.actuators]
        + [f"{v}.status" for v in trace.valves]
        + [f"{v}.mem" for v in trace.hysteretic_valves]
    )
    for sample in trace.samples:
        writer.writerow(
            [_fmt(sample.t)]
            + [_fmt(sample.pressures[a]) for a in trace.actuators]
            + [str(sample.statuses[v].code) for v in trace.valves]
            + [str(sample.memories[v]) for v in trace.hysteretic_valves]
        )
    return buffer.getvalue()


def write_trace_csv(trace: Trace, path: Union[str, Path]) -> Path:
    """Write a trace as CSV, atomically."""
    target = atomic_write_text(path, trace_to_csv(trace))
    logger.info(f"Wrote {len(trace.samples)} samples to {target}")
    return target


def read_trace_csv(path: Union[str, Path]) -> Trace:
    """
    Reconstruct a Trace from its CSV export.

    Event markers are not part of the export, so the samples come back
    without them and ``events`` is empty.

    Raises:
        InvalidInputError: If the header or a row is malformed.
    """
    source = Path(path)
    try:
        with source.open(newline="", encoding="utf-8") as handle:
            rows = list(csv.reader(handle))
    except OSError as e:
        raise InvalidInputError(
            f"Cannot read trace {source}: {e}", details={"path": str(source)}
        ) from e

    if not rows or not rows[0] or rows[0][0] != "t":
        raise InvalidInputError(
            "Trace CSV must start with a 't' column", details={"path": str(source)}
        )
    header = rows[0]
    actuators = tuple(c[: -len(".p")] for c in header if c.endswith(".p"))
    valves = tuple(c[: -len(".status")] for c in header if c.endswith(".status"))
    hysteretic = tuple(c[: -len(".mem")] for c in header if c.endswith(".mem"))
    if 1 + len(actuators) + len(valves) + len(hysteretic) != len(header):
        raise InvalidInputError("Unrecognized trace CSV columns", details={"header": header})

    trace = Trace(actuators=actuators, valves=valves, hysteretic_valves=hysteretic)
    n_a, n_v = len(actuators), len(valves)
    for line_no, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise InvalidInputError(
                f"{source}:{line_no}: expected {len(header)} fields, got {len(row)}",
                details={"path": str(source), "line": line_no},
            )
        try:
            values = [float(x) for x in row[: 1 + n_a]]
            codes = [int(x) for x in row[1 + n_a :]]
        except ValueError as e:
            raise InvalidInputError(
                f"{source}:{line_no}: {e}", details={"path": str(source), "line": line_no}
            ) from e
        sample = TraceSample(
            t=values[0],
            pressures=dict(zip(actuators, values[1:])),
            statuses={v: FlowStatus.from_code(c) for v, c in zip(valves, codes[:n_v])},
            memories=dict(zip(hysteretic, codes[n_v:])),
        )
        if trace.samples and sample.t <= trace.samples[-1].t:
            raise InvalidInputError(
                f"{source}:{line_no}: time is not strictly increasing",
                details={"path": str(source), "line": line_no},
            )
        trace.append(sample)
    logger.debug(f"Read {len(trace.samples)} samples from {source}")
    return trace


# =============================================================================
# Switching points
# =============================================================================


@dataclass(frozen=True)
class SwitchingPoint:
    """Turning point of an actuator's pressure (where its vent switched)."""

    t: float
    pressure: float
    kind: str  # "peak" or "trough"


@dataclass(frozen=True)
class ThresholdEstimate:
    """
    Sensing pressures observed when a controlled actuator turned around.

    Attributes:
        at_peaks: Mean sensing pressure at the controlled actuator's peaks.
        at_troughs: Mean sensing pressure at its troughs.
        count: Number of turning points used.
    """

    at_peaks: Optional[float]
    at_troughs: Optional[float]
    count: int

    @property
    def low(self) -> Optional[float]:
        values = [v for v in (self.at_peaks, self.at_troughs) if v is not None]
        return min(values) if values else None

    @property
    def high(self) -> Optional[float]:
        values = [v for v in (self.at_peaks, self.at_troughs) if v is not None]
        return max(values) if values else None


def identify_switching_points(trace: Trace, actuator: str) -> List[SwitchingPoint]:
    """
    Find the peaks and troughs of an actuator's pressure.

    Flat stretches (relief cap, equilibrium) carry the previous slope, so a
    plateau followed by a decrease yields a single peak at its start.

    Raises:
        InvalidInputError: If the actuator is not part of the trace.
    """
    if actuator not in trace.actuators:
        raise InvalidInputError(
            f"Actuator {actuator} is not in the trace", details={"actuators": trace.actuators}
        )
    times = trace.times()
    pressures = trace.pressure_series(actuator)
    if len(pressures) < 3:
        return []

    slopes = np.sign(np.diff(pressures))
    points: List[SwitchingPoint] = []
    previous = 0.0
    turn = 0  # sample where the previous non-flat stretch ended
    for i, slope in enumerate(slopes):
        if slope == 0:
            continue
        if previous > 0 and slope < 0:
            points.append(SwitchingPoint(float(times[turn]), float(pressures[turn]), "peak"))
        elif previous < 0 and slope > 0:
            points.append(SwitchingPoint(float(times[turn]), float(pressures[turn]), "trough"))
        previous = slope
        turn = i + 1
    return points


def estimate_thresholds(trace: Trace, sense: str, controlled: str) -> ThresholdEstimate:
    """
    Estimate a valve's thresholds from a trace.

    The valve sensing ``sense`` switches ``controlled``'s vent, so at every
    turning point of ``controlled`` the sensing pressure sits at a threshold.
    For a constant valve both means agree; for a hysteretic valve they give
    the two transition points.
    """
    points = identify_switching_points(trace, controlled)
    sense_series = trace.pressure_series(sense)
    index = {t: i for i, t in enumerate(trace.times())}
    peaks = [float(sense_series[index[pt.t]]) for pt in points if pt.kind == "peak"]
    troughs = [float(sense_series[index[pt.t]]) for pt in points if pt.kind == "trough"]
    return ThresholdEstimate(
        at_peaks=float(np.mean(peaks)) if peaks else None,
        at_troughs=float(np.mean(troughs)) if troughs else None,
        count=len(points),
    )
