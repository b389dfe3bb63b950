from enum import Enum
from typing import Annotated, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

# Money is a plain double: abstract currency units, no rounding to cents.
Money = Annotated[float, Field(allow_inf_nan=False)]
NonNegativeMoney = Annotated[float, Field(ge=0, allow_inf_nan=False)]


class Role(str, Enum):
    """Role indicator E: 0 for investors, 1 for employees."""
    INVESTOR = "Investor"
    EMPLOYEE = "Employee"

    @property
    def indicator(self) -> int:
        return 1 if self is Role.EMPLOYEE else 0


class Member(BaseModel):
    """
    One participant of the firm.

    Investors only carry an investment; employees carry the wage basis,
    effort, performance samples and hierarchy level. Validation is
    role-tagged and happens once, at construction.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    id: str = Field(min_length=1)
    role: Role
    market_wage: NonNegativeMoney = Field(
        default=0.0, description="Outside-option wage w_r (employees only)."
    )
    effort: float = Field(
        default=0.0, allow_inf_nan=False,
        description="Effort per hour, open interval (0, 1) (employees only)."
    )
    investment: NonNegativeMoney = Field(
        default=0.0, description="Portion of the project cost granted P_0j (investors only)."
    )
    perf_samples: int = Field(
        default=0, ge=0, description="Performance sample count tau (employees only)."
    )
    level: Optional[int] = Field(
        default=None, ge=1, description="Hierarchy level n_j, 1 is the base (employees only)."
    )
    fitness: Optional[float] = Field(
        default=None, gt=0, allow_inf_nan=False,
        description="Task fitness used by the productivity curve (employees only)."
    )

    @model_validator(mode="after")
    def _check_role_fields(self) -> "Member":
        if self.role is Role.INVESTOR:
            if self.investment <= 0:
                raise ValueError(f"investor '{self.id}': investment must be > 0, got {self.investment}")
            stray = [
                name for name, value in (
                    ("market_wage", self.market_wage),
                    ("effort", self.effort),
                    ("perf_samples", self.perf_samples),
                )
                if value
            ]
            if self.level is not None:
                stray.append("level")
            if self.fitness is not None:
                stray.append("fitness")
            if stray:
                raise ValueError(f"investor '{self.id}': employee-only fields set: {', '.join(stray)}")
            return self

        if self.market_wage <= 0:
            raise ValueError(f"employee '{self.id}': market_wage must be > 0, got {self.market_wage}")
        if not 0 < self.effort < 1:
            raise ValueError(
                f"employee '{self.id}': effort must lie in the open interval (0, 1), got {self.effort}"
            )
        if self.perf_samples < 1:
            raise ValueError(f"employee '{self.id}': perf_samples must be >= 1, got {self.perf_samples}")
        if self.level is None:
            raise ValueError(f"employee '{self.id}': level is required")
        if self.investment:
            raise ValueError(f"employee '{self.id}': investment is investor-only (dual roles are not modelled)")
        return self

    @property
    def is_investor(self) -> bool:
        return self.role is Role.INVESTOR

    @property
    def is_employee(self) -> bool:
        return self.role is Role.EMPLOYEE


class CostBreakdown(BaseModel):
    """
    Cost components of one transaction.

    External side: land, labour and capital scaled by price uncertainty.
    Internal side: legal cost, organisation cost and operational uncertainty.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    land: NonNegativeMoney = 0.0
    labour: NonNegativeMoney = 0.0
    capital: NonNegativeMoney = 0.0
    price_uncertainty: Annotated[float, Field(ge=0, allow_inf_nan=False)] = 0.0
    legal_cost: NonNegativeMoney = 0.0
    organisation_cost: NonNegativeMoney = 0.0
    operational_uncertainty: NonNegativeMoney = 0.0


class MarketParams(BaseModel):
    """
    Linear supply S = a + bP and demand D = c - dP + e*IE.

    IE (inflation expectation) is the same quantity as the price
    uncertainty U_p, so it is stored once.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    a: Money = 0.0
    b: Money = 1.0
    c: Money = 0.0
    d: Money = 1.0
    e: Money = 0.0
    inflation_expectation: Money = 0.0


class BudgetSet(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    investor_budget: Money
    customer_budget: Money
    worker_reservation: Money


class FirmScenario(BaseModel):
    """Firm-wide parameters for one contractual cycle."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    members: List[Member] = Field(min_length=1)
    levels: int = Field(ge=1)
    royalty_rate: float = Field(ge=0, le=1, allow_inf_nan=False)
    sales: NonNegativeMoney
    costs: NonNegativeMoney
    cost_breakdowns: List[CostBreakdown] = Field(default_factory=list)
    market: MarketParams = Field(default_factory=MarketParams)
    existence_uncertainty: Annotated[float, Field(ge=0, allow_inf_nan=False)] = 0.0
    budgets: Optional[BudgetSet] = None

    @model_validator(mode="after")
    def _check_members(self) -> "FirmScenario":
        seen = set()
        for member in self.members:
            if member.id in seen:
                raise ValueError(f"duplicate member id '{member.id}'")
            seen.add(member.id)
            if member.is_employee and member.level > self.levels:
                raise ValueError(
                    f"employee '{member.id}': level {member.level} exceeds firm levels {self.levels}"
                )
        return self

    @property
    def profit_pool(self) -> float:
        """S - C; may be negative and is never clamped."""
        return self.sales - self.costs

    @property
    def investors(self) -> List[Member]:
        return [m for m in self.members if m.is_investor]

    @property
    def employees(self) -> List[Member]:
        return [m for m in self.members if m.is_employee]

    def with_royalty(self, royalty_rate: float) -> "FirmScenario":
        """Copy of the scenario with a different royalty rate (re-validated)."""
        return FirmScenario.model_validate({**self.model_dump(), "royalty_rate": royalty_rate})
