"""
Exceptions module for pneumalogic.

This module provides the exception hierarchy shared by the logic core,
the simulator, the netlist tooling and the verifier.
"""

from pneumalogic.exceptions.errors import (
    AbstractionConflictError,
    ConfigurationError,
    GeometryInfeasibleError,
    InconsistentChartError,
    InsufficientDataError,
    InvalidInputError,
    InvalidMonitorError,
    InvalidThresholdError,
    NetlistError,
    NetlistParseError,
    NoCrossingError,
    NonPeriodicError,
    PneumaLogicError,
    SimulationDivergedError,
    SimulationError,
    SimulationStallError,
    VerificationError,
)

__all__ = [
    "PneumaLogicError",
    "ConfigurationError",
    "InvalidInputError",
    "InvalidThresholdError",
    "GeometryInfeasibleError",
    "NetlistError",
    "NetlistParseError",
    "AbstractionConflictError",
    "SimulationError",
    "SimulationStallError",
    "SimulationDivergedError",
    "NoCrossingError",
    "VerificationError",
    "InvalidMonitorError",
    "InsufficientDataError",
    "NonPeriodicError",
    "InconsistentChartError",
]
