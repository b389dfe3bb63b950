from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from app.models.firm.scenario import Role


class ViabilityFailure(str, Enum):
    COST_INVERSION = "CostInversion"
    ZERO_UNCERTAINTY = "ZeroUncertainty"


class Viability(BaseModel):
    """Outcome of the firm-existence test: viable, or the first failed condition."""
    model_config = ConfigDict(frozen=True)

    viable: bool
    reason: Optional[ViabilityFailure] = None

    def describe(self) -> str:
        if self.viable:
            return "Viable"
        if self.reason is ViabilityFailure.ZERO_UNCERTAINTY:
            return "NotViable(ZeroUncertainty): existence uncertainty U_e must be non-zero"
        return "NotViable(CostInversion): internal cost exceeds external cost"


class Verdict(str, Enum):
    EXPAND = "Expand"
    STOP = "Stop"


class BudgetViolationKind(str, Enum):
    INVESTOR_OVER_BUDGET = "InvestorOverBudget"
    CUSTOMER_OVER_BUDGET = "CustomerOverBudget"
    CUSTOMER_ABOVE_EQUILIBRIUM = "CustomerAboveEquilibrium"
    WAGE_BELOW_RESERVATION = "WageBelowReservation"


class BudgetViolation(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: BudgetViolationKind
    role: str = Field(description="Investor, Customer or Employee.")
    member_id: Optional[str] = None
    budget: float
    amount: float

    def describe(self) -> str:
        who = f"{self.role} '{self.member_id}'" if self.member_id else self.role
        return f"{self.kind.value}: {who} budget={self.budget:g} amount={self.amount:g}"


class MemberAllocation(BaseModel):
    model_config = ConfigDict(frozen=True)

    member_id: str
    role: Role
    level: Optional[int] = None
    beta: float = Field(ge=0, le=1)
    wage: float = Field(ge=0)
    value: float


class AllocationResult(BaseModel):
    """
    Dividend shares, wages and value to the individual for every member.

    residual_beta is the share nobody was entitled to: the royalty left by
    underfunding investors plus the weight of empty hierarchy levels.
    """
    model_config = ConfigDict(frozen=True)

    members: List[MemberAllocation]
    profit_pool: float
    level_weights: Dict[int, float]
    residual_beta: float

    def by_id(self) -> Dict[str, MemberAllocation]:
        return {m.member_id: m for m in self.members}

    @property
    def beta_total(self) -> float:
        return sum(m.beta for m in self.members)

    @property
    def dividend_total(self) -> float:
        return sum(m.value - m.wage for m in self.members)
