"""
Switch-valve data models.

This module defines Pydantic models for the passive switch-valves that
couple actuators: the valve kinds, their netlist specification, the
evaluated flow state and the slider-crank linkage geometry used as a
design aid for normally-closed valves.
"""

from enum import Enum
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from pneumalogic.models.logic import ConstantThreshold, HystMemory, HystereticThreshold


class ValveKind(str, Enum):
    """Enumeration of switch-valve kinds."""

    NC = "NC"
    NO = "NO"
    HNC = "HNC"
    HNO = "HNO"

    @property
    def is_hysteretic(self) -> bool:
        """Whether the valve carries bistable memory."""
        return self in (ValveKind.HNC, ValveKind.HNO)

    @property
    def is_inverting(self) -> bool:
        """Normally-closed kinds unblock on a high input, i.e. act as NOT gates."""
        return self in (ValveKind.NC, ValveKind.HNC)


class FlowStatus(str, Enum):
    """Flow status of a valve's controlled line."""

    BLOCKED = "blocked"
    UNBLOCKED = "unblocked"

    @property
    def code(self) -> int:
        """CSV encoding: 0 = blocked, 1 = unblocked."""
        return 1 if self is FlowStatus.UNBLOCKED else 0

    @classmethod
    def from_code(cls, code: int) -> "FlowStatus":
        return cls.UNBLOCKED if code else cls.BLOCKED


ValveThreshold = Annotated[
    Union[ConstantThreshold, HystereticThreshold], Field(discriminator="kind")
]


class ValveSpec(BaseModel):
    """
    Netlist specification of a switch-valve.

    Attributes:
        id: Valve name.
        kind: NC, NO, HNC or HNO.
        sense: Id of the actuator whose pressure operates the valve.
        thresholds: Constant threshold (NC/NO) or hysteretic pair (HNC/HNO).
        controls: Id of the actuator whose vent line the valve blocks/unblocks.
        init_memory: Initial bistable memory (hysteretic kinds only).
    """

    model_config = ConfigDict(frozen=True)

    id: str = Field(..., min_length=1, description="Valve name")
    kind: ValveKind
    sense: str = Field(..., min_length=1, description="Sensing actuator id")
    thresholds: ValveThreshold
    controls: str = Field(..., min_length=1, description="Controlled actuator id")
    init_memory: Literal[0, 1] = 0

    @model_validator(mode="after")
    def validate_kind_threshold(self) -> "ValveSpec":
        """HNC/HNO need a hysteretic threshold, NC/NO a constant one."""
        hysteretic = isinstance(self.thresholds, HystereticThreshold)
        if self.kind.is_hysteretic and not hysteretic:
            raise ValueError(f"{self.kind.value} requires low/high")
        if not self.kind.is_hysteretic and hysteretic:
            raise ValueError(f"{self.kind.value} requires threshold")
        if not self.kind.is_hysteretic and self.init_memory:
            raise ValueError(f"{self.kind.value} has no memory to initialize")
        return self

    @property
    def initial_memory(self) -> Optional[HystMemory]:
        """Initial memory for hysteretic kinds, None otherwise."""
        return HystMemory(bit=self.init_memory) if self.kind.is_hysteretic else None


class ValveFlowState(BaseModel):
    """
    Evaluated state of a valve.

    Attributes:
        status: Blocked or unblocked flow path.
        memory: Bistable memory after the evaluation (hysteretic kinds only).
    """

    model_config = ConfigDict(frozen=True)

    status: FlowStatus
    memory: Optional[HystMemory] = None

    @property
    def unblocked(self) -> bool:
        return self.status is FlowStatus.UNBLOCKED


class SliderCrankGeometry(BaseModel):
    """
    Slider-crank model of a folded-tube NC valve.

    The tube is folded at living hinges A, B and C. A is a fixed pivot, AB
    acts as the crank, BC as the coupler and C slides along the actuator's
    axis, so the distance ``s`` between A and C fixes the kink angle at B.

    Attributes:
        l_ab: Crank length AB in mm.
        l_bc: Coupler length BC in mm.
        s0: Initial (unpressurized) pivot distance in mm, optional.
        theta_crit: Interior angle at B (degrees) below which flow at B is blocked.
    """

    model_config = ConfigDict(frozen=True)

    l_ab: float = Field(..., gt=0, allow_inf_nan=False, description="Crank AB (mm)")
    l_bc: float = Field(..., gt=0, allow_inf_nan=False, description="Coupler BC (mm)")
    s0: Optional[float] = Field(default=None, gt=0, description="Initial distance (mm)")
    theta_crit: float = Field(
        default=90.0, gt=0, le=180, description="Kink angle at B that opens flow (deg)"
    )

    @property
    def s_min(self) -> float:
        """Exclusive lower bound of feasible pivot distances."""
        return abs(self.l_ab - self.l_bc)

    @property
    def s_max(self) -> float:
        """Inclusive upper bound (fully extended linkage)."""
        return self.l_ab + self.l_bc

    @model_validator(mode="after")
    def validate_s0(self) -> "SliderCrankGeometry":
        if self.s0 is not None and not (self.s_min < self.s0 <= self.s_max):
            raise ValueError(
                f"s0={self.s0} outside feasible range ({self.s_min}, {self.s_max}]"
            )
        return self
