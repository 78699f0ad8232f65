"""
Utility functions for pneumalogic.

This module provides shared utilities:
- validators: Literal and identifier validation used by the parsers
- files: Atomic artifact writes
"""

from pneumalogic.utils.files import atomic_write_bytes, atomic_write_text
from pneumalogic.utils.validators import (
    ValidationResult,
    parse_bit,
    parse_hyst,
    parse_number,
    parse_signal,
    validate_identifier,
    validate_label,
)

__all__ = [
    # Validation
    "ValidationResult",
    "validate_identifier",
    "validate_label",
    "parse_number",
    "parse_hyst",
    "parse_bit",
    "parse_signal",
    # Files
    "atomic_write_bytes",
    "atomic_write_text",
]
