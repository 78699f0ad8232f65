"""
Logic-level data models.

This module defines the Pydantic models used to discretize actuator
pressures into logic states: multi-bit logic levels, the threshold
variants (constant, pair, hysteretic and composite), the hysteretic
memory bit and the NOT/BUFFER gate relation abstracted from a valve.
"""

from enum import Enum
from typing import Annotated, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class LogicLevel(BaseModel):
    """
    Logic level of an actuator, encoded most-significant bit first.

    Multi-bit codes are thermometer codes: ``[0 0] < [0 1] < [1 1]``.
    A set bit may never precede a cleared one, so ``[1 0]`` is illegal.

    Inputs merged from a hysteretic and a constant threshold are independent
    bits rather than a thermometer code (the hysteretic bit may stay set
    after the pressure drops below the constant threshold); such levels are
    built with ``thermometer=False`` and are not ordered.

    Attributes:
        code: Bits, most-significant first.
        thermometer: Whether the code must be monotone.
    """

    model_config = ConfigDict(frozen=True)

    code: Tuple[int, ...] = Field(..., min_length=1, description="Bits, MSB first")
    thermometer: bool = True

    @field_validator("code")
    @classmethod
    def validate_bits(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        """Reject non-binary digits."""
        if any(bit not in (0, 1) for bit in v):
            raise ValueError(f"logic bits must be 0 or 1, got {list(v)}")
        return v

    @model_validator(mode="after")
    def validate_monotone(self) -> "LogicLevel":
        """Reject non-monotone thermometer codes."""
        if self.thermometer and list(self.code) != sorted(self.code):
            raise ValueError(
                f"illegal code {list(self.code)}: a set bit precedes a cleared bit"
            )
        return self

    @classmethod
    def of(cls, *bits: int) -> "LogicLevel":
        """Build a level from bits given most-significant first."""
        return cls(code=tuple(bits))

    @classmethod
    def from_count(cls, ones: int, arity: int) -> "LogicLevel":
        """Build the level of the given arity with ``ones`` set bits."""
        return cls(code=tuple([0] * (arity - ones) + [1] * ones))

    @property
    def arity(self) -> int:
        """Number of bits in the code."""
        return len(self.code)

    @property
    def ones(self) -> int:
        """Number of set bits (the position in the total order)."""
        return sum(self.code)

    def bit(self, index: int) -> int:
        """Return the bit for the ``index``-th lowest threshold (0 = LSB)."""
        return self.code[self.arity - 1 - index]

    def __str__(self) -> str:
        if self.arity == 1:
            return str(self.code[0])
        return "[" + " ".join(str(b) for b in self.code) + "]"


# =============================================================================
# Threshold specifications
# =============================================================================


class ConstantThreshold(BaseModel):
    """
    Single constant threshold (binary logic state).

    Attributes:
        level: Threshold pressure in psi.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["constant"] = "constant"
    level: float = Field(..., ge=0, allow_inf_nan=False, description="Threshold (psi)")

    @property
    def arity(self) -> int:
        return 1

    @property
    def on_level(self) -> float:
        """Pressure at which the logic level switches on."""
        return self.level

    def components(self) -> Tuple["ConstantThreshold", ...]:
        return (self,)

    def levels(self) -> Tuple[float, ...]:
        return (self.level,)


class HystereticThreshold(BaseModel):
    """
    Hysteretic threshold pair: switches up at ``high`` and down at ``low``.

    Attributes:
        low: Lower transition pressure P- in psi.
        high: Upper transition pressure P+ in psi.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["hysteretic"] = "hysteretic"
    low: float = Field(..., ge=0, allow_inf_nan=False, description="P- (psi)")
    high: float = Field(..., ge=0, allow_inf_nan=False, description="P+ (psi)")

    @model_validator(mode="after")
    def validate_order(self) -> "HystereticThreshold":
        if not self.low < self.high:
            raise ValueError(f"hysteretic threshold requires low < high ({self.low}, {self.high})")
        return self

    @property
    def arity(self) -> int:
        return 1

    @property
    def on_level(self) -> float:
        return self.high

    def components(self) -> Tuple["HystereticThreshold", ...]:
        return (self,)

    def levels(self) -> Tuple[float, ...]:
        return (self.low, self.high)


class PairThreshold(BaseModel):
    """
    Two constant thresholds defining a ternary logic state.

    Attributes:
        low: Lower threshold P1 in psi.
        high: Upper threshold P2 in psi.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["pair"] = "pair"
    low: float = Field(..., ge=0, allow_inf_nan=False, description="P1 (psi)")
    high: float = Field(..., ge=0, allow_inf_nan=False, description="P2 (psi)")

    @model_validator(mode="after")
    def validate_order(self) -> "PairThreshold":
        if not self.low < self.high:
            raise ValueError(f"pair threshold requires low < high ({self.low}, {self.high})")
        return self

    @property
    def arity(self) -> int:
        return 2

    @property
    def on_level(self) -> float:
        return self.low

    def components(self) -> Tuple[ConstantThreshold, ...]:
        return (ConstantThreshold(level=self.low), ConstantThreshold(level=self.high))

    def levels(self) -> Tuple[float, ...]:
        return (self.low, self.high)


SingleThreshold = Annotated[
    Union[ConstantThreshold, HystereticThreshold], Field(discriminator="kind")
]


class CompositeThreshold(BaseModel):
    """
    Ascending list of single-bit thresholds merged into one multi-bit state.

    Used when an actuator drives several valves whose thresholds cannot be
    expressed as a plain pair, e.g. one hysteretic and one constant valve.
    Parts are ordered by the pressure at which each switches on.
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["composite"] = "composite"
    parts: Tuple[SingleThreshold, ...] = Field(..., min_length=2)

    @field_validator("parts")
    @classmethod
    def validate_ascending(cls, v: Tuple[SingleThreshold, ...]) -> Tuple[SingleThreshold, ...]:
        ons = [part.on_level for part in v]
        if any(a >= b for a, b in zip(ons, ons[1:])):
            raise ValueError(f"composite parts must be strictly ascending, got {ons}")
        return v

    @property
    def arity(self) -> int:
        return len(self.parts)

    @property
    def on_level(self) -> float:
        return self.parts[0].on_level

    def components(self) -> Tuple[Union[ConstantThreshold, HystereticThreshold], ...]:
        return tuple(self.parts)

    def levels(self) -> Tuple[float, ...]:
        return tuple(sorted({lvl for part in self.parts for lvl in part.levels()}))


ThresholdSpec = Annotated[
    Union[ConstantThreshold, PairThreshold, HystereticThreshold, CompositeThreshold],
    Field(discriminator="kind"),
]


class HystMemory(BaseModel):
    """
    Last emitted hysteretic logic level.

    Attributes:
        bit: 0 (normal state, concave-down membrane) or 1.
    """

    model_config = ConfigDict(frozen=True)

    bit: Literal[0, 1] = 0


# =============================================================================
# Gate relations
# =============================================================================


class GateKind(str, Enum):
    """Enumeration of gate operations a valve coupling can realize."""

    NOT = "NOT"
    BUFFER = "BUFFER"


class GateRelation(BaseModel):
    """
    NOT/BUFFER abstraction of one valve coupling.

    The input actuator's logic state (with respect to ``input_threshold``)
    determines the direction in which the output actuator's pressure evolves.

    Attributes:
        kind: NOT or BUFFER.
        input: Id of the sensing actuator.
        output: Id of the actuator whose vent the valve operates.
        input_threshold: Threshold spec of the input's logic state; multi-bit
            when the input actuator drives several valves.
        input_index: Which bit of ``input_threshold`` this gate reads (0 = lowest).
        output_thresholds: Labels of the output's logic signals; more than one
            label makes the output multi-bit.
        valve: Id of the valve the relation was abstracted from.
    """

    model_config = ConfigDict(frozen=True)

    kind: GateKind
    input: str = Field(..., min_length=1)
    output: str = Field(..., min_length=1)
    input_threshold: ThresholdSpec
    input_index: int = Field(default=0, ge=0)
    output_thresholds: Tuple[str, ...] = Field(default=())
    valve: Optional[str] = None

    @model_validator(mode="after")
    def validate_index(self) -> "GateRelation":
        if self.input_index >= self.input_threshold.arity:
            raise ValueError(
                f"input_index {self.input_index} out of range for arity "
                f"{self.input_threshold.arity}"
            )
        return self

    @property
    def read_threshold(self) -> Union[ConstantThreshold, HystereticThreshold]:
        """The single-bit threshold this gate actually reads."""
        return self.input_threshold.components()[self.input_index]

    @property
    def hysteretic(self) -> bool:
        """Whether the gate input is a hysteretic logic state."""
        return isinstance(self.read_threshold, HystereticThreshold)

    @property
    def output_arity(self) -> int:
        return max(1, len(self.output_thresholds))

    def __str__(self) -> str:
        suffix = "_hyst" if self.hysteretic else ""
        return f"{self.kind.value}{suffix}({self.input}->{self.output})"
