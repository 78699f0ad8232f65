"""
Circuit data models.

This module defines the Pydantic models for a valve-coupled actuator
network: lumped actuators, monitors (labeled logic thresholds used to
read the circuit) and the circuit itself with its cross-reference rules.
"""

from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from pneumalogic.models.valve import FlowStatus, ValveSpec, ValveThreshold

#: Relief cap default, as a multiple of the largest monitor threshold.
P_MAX_MONITOR_FACTOR = 5.0
#: Divergence guard, as a multiple of the largest threshold, when no cap applies.
DIVERGENCE_FACTOR = 10.0


class VentState(str, Enum):
    """Constant vent declaration for actuators without a controlling valve."""

    OPEN = "open"
    CLOSED = "closed"

    @property
    def status(self) -> FlowStatus:
        return FlowStatus.UNBLOCKED if self is VentState.OPEN else FlowStatus.BLOCKED


class VentLaw(str, Enum):
    """How an unblocked vent affects the supply.

    DUMP: the open vent diverts the supply, dp/dt = -a_out * p.
    LEAK: the supply keeps feeding, dp/dt = a_in - a_out * p.
    """

    DUMP = "dump"
    LEAK = "leak"


class ActuatorModel(BaseModel):
    """
    Lumped pneumatic actuator.

    Attributes:
        id: Actuator name.
        fill_rate: Constant supply contribution a_in (psi/s).
        vent_coeff: Linear vent conductance a_out (1/s).
        p0: Initial pressure (psi).
        p_max: Relief cap (psi); circuit default applies when omitted.
        vent: Constant vent status for actuators no valve controls.
        vent_law: Dynamics while the vent is unblocked.
    """

    model_config = ConfigDict(frozen=True)

    id: str = Field(..., min_length=1, description="Actuator name")
    fill_rate: float = Field(..., ge=0, allow_inf_nan=False, description="a_in (psi/s)")
    vent_coeff: float = Field(..., gt=0, allow_inf_nan=False, description="a_out (1/s)")
    p0: float = Field(default=0.0, ge=0, allow_inf_nan=False, description="Initial psi")
    p_max: Optional[float] = Field(default=None, gt=0, allow_inf_nan=False)
    vent: Optional[VentState] = None
    vent_law: VentLaw = VentLaw.DUMP

    @model_validator(mode="after")
    def validate_p0(self) -> "ActuatorModel":
        if self.p_max is not None and self.p0 > self.p_max:
            raise ValueError(f"p0={self.p0} exceeds p_max={self.p_max}")
        return self


class Monitor(BaseModel):
    """
    Labeled logic threshold observed on one actuator (e.g. P_F, P_R+-).

    Attributes:
        actuator: Id of the observed actuator.
        label: Signal label, unique per actuator.
        threshold: Constant or hysteretic threshold.
    """

    model_config = ConfigDict(frozen=True)

    actuator: str = Field(..., min_length=1)
    label: str = Field(..., min_length=1)
    threshold: ValveThreshold

    @property
    def signal(self) -> str:
        """Signal name in ``<actuator>[<label>]`` form."""
        return f"{self.actuator}[{self.label}]"


class CircuitModel(BaseModel):
    """
    Valve-coupled actuator network.

    Attributes:
        actuators: Actuators in declaration order.
        valves: Valves in declaration order (also the simultaneous-event order).
        monitors: Labeled thresholds in declaration order.
    """

    model_config = ConfigDict(frozen=True)

    actuators: Tuple[ActuatorModel, ...] = Field(default=())
    valves: Tuple[ValveSpec, ...] = Field(default=())
    monitors: Tuple[Monitor, ...] = Field(default=())

    @model_validator(mode="after")
    def validate_references(self) -> "CircuitModel":
        """Check id uniqueness, dangling references and single vent control."""
        names: List[str] = [a.id for a in self.actuators] + [v.id for v in self.valves]
        duplicates = sorted({n for n in names if names.count(n) > 1})
        if duplicates:
            raise ValueError(f"duplicate ids: {duplicates}")

        actuator_ids = {a.id for a in self.actuators}
        controlled: Dict[str, str] = {}
        for valve in self.valves:
            for ref in (valve.sense, valve.controls):
                if ref not in actuator_ids:
                    raise ValueError(f"valve {valve.id} references unknown actuator {ref}")
            if valve.controls in controlled:
                raise ValueError(
                    f"actuator {valve.controls} vent controlled by both "
                    f"{controlled[valve.controls]} and {valve.id}"
                )
            controlled[valve.controls] = valve.id

        seen = set()
        for monitor in self.monitors:
            if monitor.actuator not in actuator_ids:
                raise ValueError(f"monitor {monitor.label} on unknown actuator {monitor.actuator}")
            key = (monitor.actuator, monitor.label)
            if key in seen:
                raise ValueError(f"duplicate monitor label {monitor.label} on {monitor.actuator}")
            seen.add(key)
        return self

    # =========================================================================
    # Lookups
    # =========================================================================

    @property
    def actuator_ids(self) -> Tuple[str, ...]:
        return tuple(a.id for a in self.actuators)

    def actuator(self, actuator_id: str) -> ActuatorModel:
        for actuator in self.actuators:
            if actuator.id == actuator_id:
                return actuator
        raise KeyError(actuator_id)

    def valve(self, valve_id: str) -> ValveSpec:
        for valve in self.valves:
            if valve.id == valve_id:
                return valve
        raise KeyError(valve_id)

    def controlling_valve(self, actuator_id: str) -> Optional[ValveSpec]:
        """Valve operating the actuator's vent, if any."""
        for valve in self.valves:
            if valve.controls == actuator_id:
                return valve
        return None

    def sensing_valves(self, actuator_id: str) -> Tuple[ValveSpec, ...]:
        """Valves operated by the actuator's pressure, in declaration order."""
        return tuple(v for v in self.valves if v.sense == actuator_id)

    def monitors_for(self, actuator_id: str) -> Tuple[Monitor, ...]:
        return tuple(m for m in self.monitors if m.actuator == actuator_id)

    def monitor(self, actuator_id: str, label: str) -> Monitor:
        for monitor in self.monitors:
            if monitor.actuator == actuator_id and monitor.label == label:
                return monitor
        raise KeyError(f"{actuator_id}[{label}]")

    # =========================================================================
    # Derived limits
    # =========================================================================

    @property
    def default_p_max(self) -> Optional[float]:
        """5x the largest monitor threshold, or None without monitors."""
        levels = [max(m.threshold.levels()) for m in self.monitors]
        return P_MAX_MONITOR_FACTOR * max(levels) if levels else None

    def p_max_for(self, actuator_id: str) -> Optional[float]:
        """Explicit relief cap of the actuator, else the circuit default."""
        explicit = self.actuator(actuator_id).p_max
        return explicit if explicit is not None else self.default_p_max

    @property
    def divergence_limit(self) -> Optional[float]:
        """Pressure above which an uncapped actuator is declared diverged."""
        levels = [lvl for v in self.valves for lvl in v.thresholds.levels()]
        levels += [lvl for m in self.monitors for lvl in m.threshold.levels()]
        return DIVERGENCE_FACTOR * max(levels) if levels and max(levels) > 0 else None

    @property
    def element_count(self) -> Dict[str, int]:
        return {
            "actuators": len(self.actuators),
            "valves": len(self.valves),
            "monitors": len(self.monitors),
        }
