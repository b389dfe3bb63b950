from enum import Enum
from typing import Dict, List

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.config import settings
from app.models.firm.results import AllocationResult, Viability
from app.models.firm.scenario import NonNegativeMoney


class TaskKind(str, Enum):
    MANUAL = "Manual"
    AI = "AI"
    HYBRID = "Hybrid"


class TaskSpec(BaseModel):
    """A formalised process activity and its contract-borne internal costs."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    id: str = Field(min_length=1)
    kind: TaskKind
    legal_cost: NonNegativeMoney = 0.0
    organisation_cost: NonNegativeMoney = 0.0
    # Stored verbatim, never executed
    contract_terms: Dict[str, str] = Field(default_factory=dict)


class OracleConfig(BaseModel):
    """Per-scenario oracle options; defaults come from app.config.settings."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    automation_rate: float = Field(default_factory=lambda: settings.AUTOMATION_RATE, ge=0, le=1)
    royalty_min: float = Field(default_factory=lambda: settings.ROYALTY_MIN, ge=0, le=1)
    royalty_max: float = Field(default_factory=lambda: settings.ROYALTY_MAX, ge=0, le=1)
    royalty_step: float = Field(default_factory=lambda: settings.ROYALTY_STEP, gt=0)
    provision_sharpness: float = Field(default_factory=lambda: settings.PROVISION_SHARPNESS, gt=0)

    @model_validator(mode="after")
    def _check_bounds(self) -> "OracleConfig":
        if self.royalty_min > self.royalty_max:
            raise ValueError(f"royalty_min {self.royalty_min} exceeds royalty_max {self.royalty_max}")
        return self


class CoaseCheck(BaseModel):
    """Internal-cost ceiling (ITC <= ETC) and per-member value floor (ITC + ETC < V)."""
    model_config = ConfigDict(frozen=True)

    etc: float
    itc: float
    condition_a: bool
    condition_b: bool
    violating_members: List[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.condition_a and self.condition_b


class FreeRiderIncidence(BaseModel):
    model_config = ConfigDict(frozen=True)

    count: int = Field(ge=0)
    member_ids: List[str] = Field(default_factory=list)


class OlsonCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    incidence: FreeRiderIncidence
    enthusiasts: int = Field(ge=0)
    members: int = Field(ge=0)
    provision_probability: float = Field(ge=0, le=1)

    @property
    def ok(self) -> bool:
        return self.incidence.count == 0


class RoyaltyAdjustment(BaseModel):
    model_config = ConfigDict(frozen=True)

    royalty_rate: float
    allocation: AllocationResult
    warnings: List[str] = Field(default_factory=list)


class CycleReport(BaseModel):
    """Everything the oracle decided and measured in one contractual cycle."""
    model_config = ConfigDict(frozen=True)

    cycle_id: int = Field(ge=0)
    royalty_rate: float
    allocation: AllocationResult
    viability: Viability
    coase: CoaseCheck
    olson: OlsonCheck
    operational_uncertainty: float
    itc_gap: float = Field(ge=0)
    adjusted_royalty: float
    productivity: Dict[str, float] = Field(default_factory=dict)
    tasks: List[TaskSpec] = Field(default_factory=list)
    next_tasks: List[TaskSpec] = Field(default_factory=list)
    warnings: List[str] = Field(default_factory=list)

    @property
    def coase_ok(self) -> bool:
        return self.coase.ok

    @property
    def olson_ok(self) -> bool:
        return self.olson.ok
