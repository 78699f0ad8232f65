"""
Unit tests for the exception hierarchy.

Tests for pneumalogic/exceptions/errors.py
"""

import pytest

from pneumalogic.exceptions import (
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


class TestPneumaLogicError:
    """Tests for the base exception class."""

    def test_basic_creation(self) -> None:
        """Test creating exception with just a message."""
        error = PneumaLogicError("Something went wrong")
        assert str(error) == "Something went wrong"
        assert error.message == "Something went wrong"
        assert error.details == {}

    def test_creation_with_details(self) -> None:
        """Test creating exception with details dict."""
        error = PneumaLogicError("Stalled", details={"guard": "v_F"})
        assert error.details == {"guard": "v_F"}
        assert str(error) == "Stalled | Details: {'guard': 'v_F'}"

    def test_catchable_as_exception(self) -> None:
        with pytest.raises(Exception):
            raise PneumaLogicError("boom")


class TestHierarchy:
    """Tests for inheritance and exit codes."""

    @pytest.mark.parametrize(
        "cls,parent",
        [
            (ConfigurationError, PneumaLogicError),
            (InvalidThresholdError, InvalidInputError),
            (GeometryInfeasibleError, PneumaLogicError),
            (NetlistParseError, NetlistError),
            (AbstractionConflictError, NetlistError),
            (SimulationStallError, SimulationError),
            (SimulationDivergedError, SimulationError),
            (NoCrossingError, SimulationError),
            (InvalidMonitorError, VerificationError),
            (InsufficientDataError, VerificationError),
            (NonPeriodicError, VerificationError),
            (InconsistentChartError, VerificationError),
        ],
    )
    def test_parent(self, cls, parent) -> None:
        assert issubclass(cls, parent)
        assert issubclass(cls, PneumaLogicError)

    @pytest.mark.parametrize(
        "cls,code",
        [
            (ConfigurationError, 1),
            (InvalidInputError, 1),
            (NetlistParseError, 2),
            (AbstractionConflictError, 2),
            (InconsistentChartError, 3),
            (NonPeriodicError, 3),
            (SimulationStallError, 4),
            (SimulationDivergedError, 4),
        ],
    )
    def test_exit_codes(self, cls, code) -> None:
        assert cls("x").exit_code == code


class TestNetlistParseError:
    """Tests for the diagnostics carried by NetlistParseError."""

    def test_diagnostics_default_empty(self) -> None:
        assert NetlistParseError("bad").diagnostics == []

    def test_diagnostics_kept(self) -> None:
        error = NetlistParseError("bad", diagnostics=["d1", "d2"], details={"file": "x.pneu"})
        assert error.diagnostics == ["d1", "d2"]
        assert error.details == {"file": "x.pneu"}
