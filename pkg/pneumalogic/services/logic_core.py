"""
Logic core: pressure discretization and gate semantics.

Pure functions that turn analog actuator pressures into binary, ternary and
hysteretic logic levels, and evaluate the NOT/BUFFER gate relations that a
valve coupling realizes. The closed-bound convention (logic high at p = P)
is used throughout.
"""

import math
import numbers
from enum import IntEnum
from itertools import product
from typing import List, Tuple

from pydantic import ValidationError

from pneumalogic.config import get_logger
from pneumalogic.exceptions import InvalidInputError, InvalidThresholdError
from pneumalogic.models.logic import (
    CompositeThreshold,
    GateKind,
    GateRelation,
    HystereticThreshold,
    HystMemory,
    LogicLevel,
)

logger = get_logger(__name__)


class Ordering(IntEnum):
    """Result of ``compare_levels``."""

    LESS = -1
    EQUAL = 0
    GREATER = 1


def _check_pressure(p: float) -> None:
    if not isinstance(p, numbers.Real) or not math.isfinite(p):
        raise InvalidInputError("Pressure must be a finite number", details={"p": p})


def _check_threshold(value: float, name: str) -> None:
    if not math.isfinite(value) or value < 0:
        raise InvalidThresholdError(
            f"Threshold {name} must be finite and >= 0", details={name: value}
        )


# =============================================================================
# Discretization
# =============================================================================


def discretize_binary(p: float, P: float) -> int:
    """
    Binary logic pressure state.

    Args:
        p: Actuator pressure (psi).
        P: Threshold (psi).

    Returns:
        1 if ``p >= P`` else 0.

    Raises:
        InvalidInputError: If ``p`` is not finite.
        InvalidThresholdError: If ``P`` is negative or not finite.
    """
    _check_pressure(p)
    _check_threshold(P, "P")
    return 1 if p >= P else 0


def discretize_ternary(p: float, P1: float, P2: float) -> LogicLevel:
    """
    Ternary logic pressure state encoded on two bits.

    Returns ``[0 0]`` below ``P1``, ``[0 1]`` on ``[P1, P2)`` and ``[1 1]``
    from ``P2`` upwards.

    Raises:
        InvalidInputError: If ``p`` is not finite.
        InvalidThresholdError: If ``P1 >= P2`` or a threshold is negative.
    """
    _check_pressure(p)
    _check_threshold(P1, "P1")
    _check_threshold(P2, "P2")
    if not P1 < P2:
        raise InvalidThresholdError(
            "Ternary thresholds require P1 < P2", details={"P1": P1, "P2": P2}
        )
    return LogicLevel.of(discretize_binary(p, P2), discretize_binary(p, P1))


def hysteretic_step(
    mem: HystMemory, p: float, P_minus: float, P_plus: float
) -> Tuple[int, HystMemory]:
    """
    Advance a hysteretic discretizer by one pressure observation.

    The output switches up at ``p >= P_plus`` and down at ``p <= P_minus``;
    strictly inside the band the previous bit is kept.

    Args:
        mem: Memory before the observation.
        p: Observed pressure (psi).
        P_minus: Low transition point (psi).
        P_plus: High transition point (psi).

    Returns:
        Tuple of (output bit, memory after the observation).

    Raises:
        InvalidThresholdError: If ``P_minus >= P_plus``.
    """
    _check_pressure(p)
    _check_threshold(P_minus, "P_minus")
    _check_threshold(P_plus, "P_plus")
    if not P_minus < P_plus:
        raise InvalidThresholdError(
            "Hysteretic thresholds require P_minus < P_plus",
            details={"P_minus": P_minus, "P_plus": P_plus},
        )
    if p >= P_plus:
        bit = 1
    elif p <= P_minus:
        bit = 0
    else:
        bit = mem.bit
    return bit, mem if mem.bit == bit else HystMemory(bit=bit)


def hysteretic_level(
    threshold: HystereticThreshold, mem: HystMemory, p: float
) -> Tuple[int, HystMemory]:
    """``hysteretic_step`` for a threshold model."""
    return hysteretic_step(mem, p, threshold.low, threshold.high)


# =============================================================================
# Ordering
# =============================================================================


def compare_levels(a: LogicLevel, b: LogicLevel) -> Ordering:
    """
    Compare two logic levels by their number of set bits.

    Raises:
        InvalidInputError: On arity mismatch or when a level is not a
            thermometer code.
    """
    if a.arity != b.arity:
        raise InvalidInputError(
            "Cannot compare logic levels of different arity",
            details={"a": str(a), "b": str(b)},
        )
    if not (a.thermometer and b.thermometer):
        raise InvalidInputError(
            "Only thermometer-coded levels are ordered", details={"a": str(a), "b": str(b)}
        )
    if a.ones < b.ones:
        return Ordering.LESS
    if a.ones > b.ones:
        return Ordering.GREATER
    return Ordering.EQUAL


def legal_codes(arity: int) -> List[LogicLevel]:
    """All monotone codes of the given arity, in ascending order."""
    if arity < 1:
        raise InvalidInputError("Arity must be >= 1", details={"arity": arity})
    return [LogicLevel.from_count(ones, arity) for ones in range(arity + 1)]


# =============================================================================
# Gate semantics
# =============================================================================


def gate_target(gate: GateRelation, input_level: LogicLevel) -> LogicLevel:
    """
    Target logic level of a gate's output for the given input level.

    The gate reads bit ``gate.input_index`` of the input level. NOT
    complements it and BUFFER passes it through. Multi-bit outputs evolve
    toward an extreme code, so the target is ``[1 ... 1]`` or ``[0 ... 0]``.

    Args:
        gate: Gate relation.
        input_level: Level of the input actuator w.r.t. ``gate.input_threshold``.

    Returns:
        Target level with the gate's output arity.

    Raises:
        InvalidInputError: If the level's arity does not match the input threshold.
    """
    expected = gate.input_threshold.arity
    if input_level.arity != expected:
        raise InvalidInputError(
            f"Gate {gate} expects a {expected}-bit input level",
            details={"gate": str(gate), "input_level": str(input_level)},
        )
    bit = input_level.bit(gate.input_index)
    out = 1 - bit if gate.kind is GateKind.NOT else bit
    return LogicLevel.from_count(out * gate.output_arity, gate.output_arity)


def truth_table(gate: GateRelation) -> List[Tuple[LogicLevel, LogicLevel]]:
    """
    Enumerate every legal input level of a gate with its target.

    Composite inputs (hysteretic plus constant parts) enumerate all bit
    combinations; thermometer inputs enumerate monotone codes only.
    """
    arity = gate.input_threshold.arity
    if isinstance(gate.input_threshold, CompositeThreshold) and any(
        isinstance(part, HystereticThreshold) for part in gate.input_threshold.parts
    ):
        inputs = [
            LogicLevel(code=code, thermometer=False) for code in product((0, 1), repeat=arity)
        ]
    else:
        inputs = legal_codes(arity)
    return [(level, gate_target(gate, level)) for level in inputs]


def make_level(bits: Tuple[int, ...], thermometer: bool = True) -> LogicLevel:
    """
    Build a LogicLevel, converting validation failures to InvalidInputError.

    Raises:
        InvalidInputError: If the bits do not form a legal code.
    """
    try:
        return LogicLevel(code=tuple(bits), thermometer=thermometer)
    except ValidationError as e:
        raise InvalidInputError(
            f"Illegal logic code {list(bits)}", details={"error": str(e)}
        ) from e
