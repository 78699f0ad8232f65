"""
Canonical netlist serialization.

Declarations are written actuators first, then valves, then monitors, each
group in declaration order with a fixed key order. Numbers use the
shortest round-trip representation; optional keys at their defaults are
omitted, so ``parse(serialize(c)).circuit == c``.
"""

from pathlib import Path
from typing import List, Union

from pneumalogic.models.circuit import ActuatorModel, CircuitModel, Monitor, VentLaw
from pneumalogic.models.logic import HystereticThreshold
from pneumalogic.models.valve import ValveSpec, ValveThreshold
from pneumalogic.utils.files import atomic_write_text


def format_number(value: float) -> str:
    """Shortest text that parses back to ``value``."""
    return repr(float(value))


def format_threshold(threshold: ValveThreshold) -> str:
    """``<num>`` or ``hyst(<low>,<high>)``."""
    if isinstance(threshold, HystereticThreshold):
        return f"hyst({format_number(threshold.low)},{format_number(threshold.high)})"
    return format_number(threshold.level)


def _actuator_line(actuator: ActuatorModel) -> str:
    parts = [
        f"actuator {actuator.id}",
        f"fill={format_number(actuator.fill_rate)}",
        f"vent_coeff={format_number(actuator.vent_coeff)}",
        f"p0={format_number(actuator.p0)}",
    ]
    if actuator.p_max is not None:
        parts.append(f"p_max={format_number(actuator.p_max)}")
    if actuator.vent is not None:
        parts.append(f"vent={actuator.vent.value}")
    if actuator.vent_law is not VentLaw.DUMP:
        parts.append(f"vent_law={actuator.vent_law.value}")
    return " ".join(parts)


def _valve_line(valve: ValveSpec) -> str:
    parts = [f"valve {valve.id}", f"kind={valve.kind.value}", f"sense={valve.sense}"]
    if isinstance(valve.thresholds, HystereticThreshold):
        parts.append(f"low={format_number(valve.thresholds.low)}")
        parts.append(f"high={format_number(valve.thresholds.high)}")
    else:
        parts.append(f"threshold={format_number(valve.thresholds.level)}")
    parts.append(f"controls={valve.controls}")
    if valve.init_memory:
        parts.append(f"init={valve.init_memory}")
    return " ".join(parts)


def _monitor_line(monitor: Monitor) -> str:
    return f"monitor {monitor.actuator} {monitor.label}={format_threshold(monitor.threshold)}"


def serialize(circuit: CircuitModel) -> str:
    """Render a circuit as canonical ``.pneu`` text."""
    groups: List[List[str]] = [
        [_actuator_line(a) for a in circuit.actuators],
        [_valve_line(v) for v in circuit.valves],
        [_monitor_line(m) for m in circuit.monitors],
    ]
    text = "\n\n".join("\n".join(group) for group in groups if group)
    return text + "\n" if text else ""


def write_netlist(circuit: CircuitModel, path: Union[str, Path]) -> Path:
    """Write a circuit's canonical text atomically."""
    return atomic_write_text(path, serialize(circuit))
