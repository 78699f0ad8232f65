"""
Logic abstraction of a circuit.

Maps every valve of a CircuitModel onto the NOT/BUFFER gate relation it
realizes. NC/HNC valves unblock the controlled vent on a high input, so the
output falls when the input rises (NOT); NO/HNO valves block it (BUFFER).
When one actuator operates several valves, their thresholds are merged into
a single multi-bit threshold specification ordered by switch-on pressure.
"""

from typing import Dict, List, Sequence, Tuple, Union

from pneumalogic.config import get_logger
from pneumalogic.exceptions import AbstractionConflictError
from pneumalogic.models.circuit import CircuitModel
from pneumalogic.models.logic import (
    CompositeThreshold,
    ConstantThreshold,
    GateKind,
    GateRelation,
    HystereticThreshold,
    PairThreshold,
    ThresholdSpec,
)

logger = get_logger(__name__)

Single = Union[ConstantThreshold, HystereticThreshold]


def merge_thresholds(actuator: str, thresholds: Sequence[Single]) -> ThresholdSpec:
    """
    Merge the single-bit thresholds read on one actuator.

    Duplicates collapse. One threshold is returned as is, two constants
    become a PairThreshold, anything else a CompositeThreshold.

    Raises:
        AbstractionConflictError: If two distinct thresholds switch on at
            the same pressure.
    """
    distinct: List[Single] = []
    for threshold in thresholds:
        if threshold not in distinct:
            distinct.append(threshold)
    distinct.sort(key=lambda t: t.on_level)
    for a, b in zip(distinct, distinct[1:]):
        if a.on_level == b.on_level:
            raise AbstractionConflictError(
                f"Actuator {actuator} has two different thresholds switching at {a.on_level}",
                details={"actuator": actuator, "thresholds": [a.model_dump(), b.model_dump()]},
            )
    if len(distinct) == 1:
        return distinct[0]
    if len(distinct) == 2 and all(isinstance(t, ConstantThreshold) for t in distinct):
        return PairThreshold(low=distinct[0].on_level, high=distinct[1].on_level)
    return CompositeThreshold(parts=tuple(distinct))


def input_thresholds(circuit: CircuitModel) -> Dict[str, ThresholdSpec]:
    """Merged threshold spec of every actuator that operates at least one valve."""
    merged: Dict[str, ThresholdSpec] = {}
    for actuator_id in circuit.actuator_ids:
        valves = circuit.sensing_valves(actuator_id)
        if valves:
            merged[actuator_id] = merge_thresholds(actuator_id, [v.thresholds for v in valves])
    return merged


def _output_labels(
    circuit: CircuitModel, actuator_id: str, merged: Dict[str, ThresholdSpec]
) -> Tuple[str, ...]:
    monitors = circuit.monitors_for(actuator_id)
    spec = merged.get(actuator_id)
    if spec is None:
        return tuple(m.label for m in monitors)
    labels: List[str] = []
    valves = circuit.sensing_valves(actuator_id)
    for part in spec.components():
        match = next((m.label for m in monitors if m.threshold == part), None)
        if match is None:
            match = next(v.id for v in valves if v.thresholds == part)
        labels.append(match)
    return tuple(labels)


def abstract(circuit: CircuitModel) -> List[GateRelation]:
    """
    Abstract a circuit into one gate relation per valve.

    Args:
        circuit: Valid circuit.

    Returns:
        Gate relations in valve declaration order.

    Raises:
        AbstractionConflictError: If a valve controls an actuator that also
            declares a constant vent, or merged thresholds collide.
    """
    merged = input_thresholds(circuit)
    gates: List[GateRelation] = []
    for valve in circuit.valves:
        controlled = circuit.actuator(valve.controls)
        if controlled.vent is not None:
            raise AbstractionConflictError(
                f"Valve {valve.id} controls {controlled.id}, which declares vent="
                f"{controlled.vent.value}",
                details={"valve": valve.id, "actuator": controlled.id},
            )
        spec = merged[valve.sense]
        index = list(spec.components()).index(valve.thresholds)
        gates.append(
            GateRelation(
                kind=GateKind.NOT if valve.kind.is_inverting else GateKind.BUFFER,
                input=valve.sense,
                output=valve.controls,
                input_threshold=spec,
                input_index=index,
                output_thresholds=_output_labels(circuit, valve.controls, merged),
                valve=valve.id,
            )
        )
    logger.debug(f"Abstracted {len(gates)} gates: {', '.join(str(g) for g in gates)}")
    return gates
