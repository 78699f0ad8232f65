"""
Valve mechanics: flow-state functions and slider-crank geometry.

Switch-valves are modeled by their threshold behavior only. NC/NO valves
compare the sensing actuator's pressure against a constant threshold;
hysteretic valves (HNC/HNO) run the bistable memory through
``hysteretic_step`` first and derive their status from the memory.

The slider-crank helpers relate the folded-tube NC valve's linkage
dimensions to the pivot distance at which its kink opens.
"""

import math
from typing import Optional

import numpy as np

from pneumalogic.config import get_logger
from pneumalogic.exceptions import GeometryInfeasibleError, InvalidInputError
from pneumalogic.models.logic import HystMemory
from pneumalogic.models.valve import (
    FlowStatus,
    SliderCrankGeometry,
    ValveFlowState,
    ValveKind,
    ValveSpec,
)
from pneumalogic.services.logic_core import discretize_binary, hysteretic_step

logger = get_logger(__name__)


def valve_flow(
    spec: ValveSpec, p_sense: float, mem: Optional[HystMemory] = None
) -> ValveFlowState:
    """
    Evaluate a valve's flow status for the sensing pressure.

    NC is unblocked iff ``p_sense >= threshold``; NO is blocked iff
    ``p_sense >= threshold``. HNO is blocked iff its memory is 1 and HNC is
    unblocked iff its memory is 1, after the memory has been updated.

    Args:
        spec: Valve specification.
        p_sense: Pressure of the sensing actuator (psi).
        mem: Memory before the evaluation (hysteretic kinds only).

    Returns:
        ValveFlowState with the status and, for hysteretic kinds, the new memory.

    Raises:
        InvalidInputError: If a hysteretic valve is evaluated without memory
            or the pressure is not finite.
    """
    if spec.kind.is_hysteretic:
        if mem is None:
            raise InvalidInputError(
                f"Hysteretic valve {spec.id} requires a memory state",
                details={"valve": spec.id, "kind": spec.kind.value},
            )
        low, high = spec.thresholds.levels()
        bit, new_mem = hysteretic_step(mem, p_sense, low, high)
        if spec.kind is ValveKind.HNO:
            status = FlowStatus.BLOCKED if bit else FlowStatus.UNBLOCKED
        else:
            status = FlowStatus.UNBLOCKED if bit else FlowStatus.BLOCKED
        return ValveFlowState(status=status, memory=new_mem)

    high = discretize_binary(p_sense, spec.thresholds.levels()[0])
    if spec.kind is ValveKind.NC:
        status = FlowStatus.UNBLOCKED if high else FlowStatus.BLOCKED
    else:
        status = FlowStatus.BLOCKED if high else FlowStatus.UNBLOCKED
    return ValveFlowState(status=status)


# =============================================================================
# Slider-crank linkage
# =============================================================================


def crank_angle(geom: SliderCrankGeometry, s: float) -> float:
    """
    Interior angle at B of triangle ABC for pivot distance ``s``.

    Args:
        geom: Linkage geometry (crank AB, coupler BC).
        s: Distance between the fixed pivot A and the slider C (mm).

    Returns:
        Angle in degrees, from the law of cosines.

    Raises:
        GeometryInfeasibleError: If ``s`` violates ``|AB - BC| < s <= AB + BC``.

    Example:
        >>> round(crank_angle(SliderCrankGeometry(l_ab=1, l_bc=1), 1.0), 6)
        60.0
    """
    if not math.isfinite(s) or not geom.s_min < s <= geom.s_max:
        raise GeometryInfeasibleError(
            f"Pivot distance {s} outside the feasible range",
            details={"s": s, "s_min": geom.s_min, "s_max": geom.s_max},
        )
    a, b = geom.l_ab, geom.l_bc
    cos_b = (a * a + b * b - s * s) / (2.0 * a * b)
    return float(np.degrees(np.arccos(np.clip(cos_b, -1.0, 1.0))))


def critical_distance(geom: SliderCrankGeometry) -> float:
    """
    Pivot distance at which the angle at B equals ``theta_crit``.

    Closed-form inverse of ``crank_angle``.

    Returns:
        Distance in mm.
    """
    a, b = geom.l_ab, geom.l_bc
    theta = np.radians(geom.theta_crit)
    return float(np.sqrt(max(a * a + b * b - 2.0 * a * b * np.cos(theta), 0.0)))


def kink_blocked(geom: SliderCrankGeometry, s: float) -> bool:
    """Whether the kink at B blocks flow (angle sharper than ``theta_crit``)."""
    return crank_angle(geom, s) < geom.theta_crit
