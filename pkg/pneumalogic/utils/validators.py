"""
Input validation utilities for pneumalogic.

This module provides reusable validation functions for:
- Netlist and chart identifiers
- Numeric literals (pressures, rates, durations)
- Hysteretic threshold literals ``hyst(<lo>,<hi>)``
- Bit literals and signal references
"""

import math
import re
from dataclasses import dataclass
from typing import Any, Dict, Optional

from pneumalogic.config import get_logger

logger = get_logger(__name__)


@dataclass
class ValidationResult:
    """
    Result of a validation operation.

    Attributes:
        is_valid: Whether the validation passed.
        value: The validated/converted value (if valid).
        error: Error message (if invalid).
        details: Additional validation details.
    """

    is_valid: bool
    value: Any = None
    error: Optional[str] = None
    details: Optional[Dict[str, Any]] = None

    def __bool__(self) -> bool:
        """Allow ValidationResult to be used in boolean context."""
        return self.is_valid


# =============================================================================
# Patterns
# =============================================================================

# Actuator, valve, state and label names
IDENTIFIER_PATTERN = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")

# Decimal or scientific literal; sign allowed so the range check can report it
NUMBER_PATTERN = re.compile(r"^[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?$")

# hyst(<num>,<num>) with optional whitespace
HYST_PATTERN = re.compile(r"^hyst\(\s*([^,()\s]+)\s*,\s*([^,()\s]+)\s*\)$")

# Signal reference <actuator>[<label>]
SIGNAL_PATTERN = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)\[([A-Za-z_][A-Za-z0-9_+\-]*)\]$")

# Monitor labels may carry a +/- suffix, e.g. P_R+
LABEL_PATTERN = re.compile(r"^[A-Za-z_][A-Za-z0-9_+\-]*$")


def validate_identifier(name: str, what: str = "identifier") -> ValidationResult:
    """
    Validate an element name.

    Rules:
    - Starts with a letter or underscore
    - Letters, digits and underscores only

    Args:
        name: Name to validate.
        what: Kind of name, used in the error message.

    Returns:
        ValidationResult with the name as value.

    Example:
        >>> validate_identifier("NCV").is_valid
        True
        >>> validate_identifier("2x").error
        "invalid identifier '2x'"
    """
    if not name or not isinstance(name, str):
        return ValidationResult(is_valid=False, error=f"{what} cannot be empty")
    if not IDENTIFIER_PATTERN.match(name):
        return ValidationResult(is_valid=False, error=f"invalid {what} {name!r}")
    return ValidationResult(is_valid=True, value=name)


def validate_label(label: str) -> ValidationResult:
    """Validate a monitor label (identifier with optional +/- characters)."""
    if not label or not LABEL_PATTERN.match(label):
        return ValidationResult(is_valid=False, error=f"invalid monitor label {label!r}")
    return ValidationResult(is_valid=True, value=label)


def parse_number(
    text: str,
    what: str = "value",
    min_value: Optional[float] = 0.0,
    strictly_positive: bool = False,
) -> ValidationResult:
    """
    Parse a finite numeric literal.

    Args:
        text: Literal text.
        what: Name of the quantity, used in error messages.
        min_value: Inclusive lower bound (None disables the check).
        strictly_positive: Require the value to be > 0.

    Returns:
        ValidationResult with the float as value.

    Example:
        >>> parse_number("2.3").value
        2.3
        >>> parse_number("nan").error
        "value must be a finite number, got 'nan'"
    """
    if not text or not NUMBER_PATTERN.match(text):
        return ValidationResult(
            is_valid=False, error=f"{what} must be a finite number, got {text!r}"
        )
    value = float(text)
    if not math.isfinite(value):
        return ValidationResult(
            is_valid=False, error=f"{what} must be a finite number, got {text!r}"
        )
    if strictly_positive and value <= 0:
        return ValidationResult(is_valid=False, error=f"{what} must be > 0, got {text}")
    if min_value is not None and value < min_value:
        return ValidationResult(
            is_valid=False, error=f"{what} must be >= {min_value:g}, got {text}"
        )
    return ValidationResult(is_valid=True, value=value)


def parse_hyst(text: str) -> ValidationResult:
    """
    Parse a ``hyst(<lo>,<hi>)`` literal.

    Returns:
        ValidationResult with a ``(low, high)`` tuple as value.

    Example:
        >>> parse_hyst("hyst(0.05,1.8)").value
        (0.05, 1.8)
    """
    match = HYST_PATTERN.match(text.strip()) if text else None
    if not match:
        return ValidationResult(
            is_valid=False, error=f"expected hyst(<low>,<high>), got {text!r}"
        )
    low = parse_number(match.group(1), "hysteresis low")
    if not low:
        return low
    high = parse_number(match.group(2), "hysteresis high")
    if not high:
        return high
    if not low.value < high.value:
        return ValidationResult(
            is_valid=False,
            error=f"hysteresis requires low < high, got ({low.value:g}, {high.value:g})",
        )
    return ValidationResult(is_valid=True, value=(low.value, high.value))


def parse_bit(text: str, what: str = "bit") -> ValidationResult:
    """Parse a ``0``/``1`` literal."""
    if text not in ("0", "1"):
        return ValidationResult(is_valid=False, error=f"{what} must be 0 or 1, got {text!r}")
    return ValidationResult(is_valid=True, value=int(text))


def parse_signal(text: str) -> ValidationResult:
    """
    Parse an ``<actuator>[<label>]`` signal reference.

    Returns:
        ValidationResult with an ``(actuator, label)`` tuple as value.
    """
    match = SIGNAL_PATTERN.match(text) if text else None
    if not match:
        return ValidationResult(
            is_valid=False, error=f"signal must look like <actuator>[<label>], got {text!r}"
        )
    return ValidationResult(is_valid=True, value=(match.group(1), match.group(2)))

