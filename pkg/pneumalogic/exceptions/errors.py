"""
Custom exception hierarchy for pneumalogic.

This module defines all custom exceptions used throughout the package,
organized in a hierarchy that allows for both specific and general error handling.

Exception Hierarchy:
    PneumaLogicError (Base)
    ├── ConfigurationError          # Settings validation failures
    ├── InvalidInputError           # Bad pressures, arity mismatches, missing memory
    │   └── InvalidThresholdError   # Threshold ordering / sign violations
    ├── GeometryInfeasibleError     # Slider-crank triangle inequality violated
    │
    ├── NetlistError                # Circuit description problems
    │   ├── NetlistParseError       # One or more error diagnostics
    │   └── AbstractionConflictError# Valve controls a constant-vent actuator
    │
    ├── SimulationError             # Hybrid integration failures
    │   ├── SimulationStallError    # Event localization underflow
    │   ├── SimulationDivergedError # Pressure ran away without a relief cap
    │   └── NoCrossingError         # Bracket without a sign change
    │
    └── VerificationError           # Discrete-layer failures
        ├── InvalidMonitorError     # Monitor references a missing actuator
        ├── InsufficientDataError   # Sequence shorter than one chart cycle
        ├── NonPeriodicError        # Abstract machine never closes a cycle
        └── InconsistentChartError  # Contradictory truth-chart rows
"""

from typing import Any, Dict, List, Optional


class PneumaLogicError(Exception):
    """
    Base exception for all pneumalogic errors.

    All custom exceptions in this package inherit from this class,
    allowing for catch-all error handling when needed.

    Attributes:
        message: Human-readable error description.
        details: Optional dictionary with additional error context.
    """

    #: Process exit code the command line reports for this class of failure.
    exit_code: int = 1

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        """
        Initialize the exception.

        Args:
            message: Human-readable error description.
            details: Optional dictionary with additional error context.
        """
        self.message = message
        self.details = details or {}
        super().__init__(self.message)

    def __str__(self) -> str:
        """Return string representation of the error."""
        if self.details:
            return f"{self.message} | Details: {self.details}"
        return self.message


# =============================================================================
# Configuration and Input Errors
# =============================================================================


class ConfigurationError(PneumaLogicError):
    """
    Raised when settings are missing or invalid.

    Example:
        >>> raise ConfigurationError(
        ...     "Invalid simulation defaults",
        ...     details={"t_end": 0.001, "dt_max": 0.01}
        ... )
    """

    pass


class InvalidInputError(PneumaLogicError):
    """
    Raised when an operation receives an argument outside its domain.

    Covers non-finite pressures, logic levels of the wrong arity and
    hysteretic valves evaluated without a memory bit.

    Example:
        >>> raise InvalidInputError(
        ...     "Pressure must be finite",
        ...     details={"pressure": float("nan")}
        ... )
    """

    pass


class InvalidThresholdError(InvalidInputError):
    """
    Raised when threshold values violate their ordering or sign rules.

    Example:
        >>> raise InvalidThresholdError(
        ...     "Pair threshold requires low < high",
        ...     details={"low": 1.8, "high": 1.1}
        ... )
    """

    pass


class GeometryInfeasibleError(PneumaLogicError):
    """
    Raised when a slider-crank distance cannot close the ABC triangle.

    Example:
        >>> raise GeometryInfeasibleError(
        ...     "Pivot distance outside the feasible range",
        ...     details={"s": 3.0, "min": 0.1, "max": 1.7}
        ... )
    """

    pass


# =============================================================================
# Netlist Errors
# =============================================================================


class NetlistError(PneumaLogicError):
    """Base class for circuit description errors."""

    exit_code = 2


class NetlistParseError(NetlistError):
    """
    Raised when a netlist or chart file produces error diagnostics.

    Attributes:
        diagnostics: Every diagnostic emitted while parsing (errors and warnings).
    """

    def __init__(
        self,
        message: str,
        diagnostics: Optional[List[Any]] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        """
        Initialize the parse error.

        Args:
            message: Human-readable error description.
            diagnostics: ParseDiagnostic records collected by the parser.
            details: Optional dictionary with additional error context.
        """
        super().__init__(message, details)
        self.diagnostics = list(diagnostics or [])


class AbstractionConflictError(NetlistError):
    """
    Raised when a valve controls an actuator that declares a constant vent.

    Example:
        >>> raise AbstractionConflictError(
        ...     "Valve controls an actuator with a constant vent",
        ...     details={"valve": "NOV", "actuator": "M", "vent": "closed"}
        ... )
    """

    pass


# =============================================================================
# Simulation Errors
# =============================================================================


class SimulationError(PneumaLogicError):
    """Base class for hybrid simulation failures."""

    exit_code = 4


class SimulationStallError(SimulationError):
    """
    Raised when event localization cannot shrink the bracket any further.

    The details identify the guard (valve or monitor) being localized.
    """

    pass


class SimulationDivergedError(SimulationError):
    """Raised when a pressure grows past the divergence guard without a relief cap."""

    pass


class NoCrossingError(SimulationError):
    """Raised when a crossing is requested on a bracket without a sign change."""

    pass


# =============================================================================
# Verification Errors
# =============================================================================


class VerificationError(PneumaLogicError):
    """Base class for discrete-layer failures."""

    exit_code = 3


class InvalidMonitorError(VerificationError):
    """Raised when a monitor or chart signal references an unknown actuator or label."""

    pass


class InsufficientDataError(VerificationError):
    """Raised when a state sequence is shorter than one chart cycle."""

    pass


class NonPeriodicError(VerificationError):
    """Raised when the abstract machine does not close a cycle within its step bound."""

    pass


class InconsistentChartError(VerificationError):
    """
    Raised when a truth chart maps one current state to different next states.

    Example:
        >>> raise InconsistentChartError(
        ...     "Contradictory rows",
        ...     details={"current": (1, 0), "next": [(1, 0), (1, 1)]}
        ... )
    """

    pass
