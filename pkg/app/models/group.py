from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

# Tolerance for the algebraic relations between group quantities
RELATION_TOLERANCE = 1e-9


class Performance(str, Enum):
    HEALTHY = "Healthy"
    UNDERPERFORMING = "Underperforming"


class Provision(str, Enum):
    PROVIDED = "Provided"
    AT_RISK = "AtRisk"


class GroupRelation(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    relation: str
    lhs: float
    rhs: float
    ok: bool


class GroupModel(BaseModel):
    """
    Group size and value quantities with the constants relating them.

    Units are documentation only: k_o and k_v in currency, k_g in currency
    squared, k_s in units times currency, k_omega dimensionless.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    group_size: float = Field(gt=0, allow_inf_nan=False)
    group_value: float = Field(allow_inf_nan=False)
    individual_value: float = Field(allow_inf_nan=False)
    good_rate: Optional[float] = Field(default=None, allow_inf_nan=False)
    supply_at_equilibrium: Optional[float] = Field(default=None, allow_inf_nan=False)
    k_o: Optional[float] = Field(default=None, gt=0, le=1)
    k_g: Optional[float] = Field(default=None, allow_inf_nan=False)
    k_s: Optional[float] = Field(default=None, allow_inf_nan=False)
    k_v: Optional[float] = Field(default=None, allow_inf_nan=False)
    k_omega: Optional[float] = Field(default=None, gt=0, allow_inf_nan=False)
    oligopoly_prob: Optional[float] = Field(default=None, gt=0, le=1)
    organisation_cost: Optional[float] = Field(default=None, allow_inf_nan=False)

    @model_validator(mode="after")
    def _check_constants(self) -> "GroupModel":
        if self.k_o is not None and self.k_g is not None:
            expected = self.k_o * self.group_value
            if abs(self.k_g - expected) > RELATION_TOLERANCE * max(1.0, abs(expected)):
                raise ValueError(f"k_g={self.k_g} must equal k_o * group_value = {expected}")
        return self

    @property
    def individual_fraction(self) -> Optional[float]:
        """F_i = V_i / V_g, undefined for a zero group value."""
        if self.group_value == 0:
            return None
        return self.individual_value / self.group_value

    def consistency_checks(self) -> List[GroupRelation]:
        """Evaluate every size relation whose quantities are all set."""
        size = self.group_size
        checks: List[GroupRelation] = []

        def add(relation: str, rhs: float):
            ok = abs(size - rhs) <= RELATION_TOLERANCE * max(1.0, abs(rhs))
            checks.append(GroupRelation(relation=relation, lhs=size, rhs=rhs, ok=ok))

        if self.k_o is not None and self.individual_value != 0:
            add("S_g = k_o * V_g / V_i", self.k_o * self.group_value / self.individual_value)
        if self.k_g is not None and self.individual_value != 0:
            add("S_g = k_g / V_i", self.k_g / self.individual_value)
        if self.k_s is not None and self.supply_at_equilibrium:
            add("S_g = k_s / zeta_o", self.k_s / self.supply_at_equilibrium)
        if self.k_v is not None and self.oligopoly_prob is not None:
            add("S_g = k_v / P_o", self.k_v / self.oligopoly_prob)
        if self.k_omega is not None and self.organisation_cost is not None:
            add("S_g = k_omega * C_o", self.k_omega * self.organisation_cost)

        fraction = self.individual_fraction
        if self.good_rate is not None and fraction is not None:
            expected = fraction * size * self.good_rate
            ok = abs(self.individual_value - expected) <= RELATION_TOLERANCE * max(1.0, abs(expected))
            checks.append(
                GroupRelation(relation="V_i = F_i * S_g * T", lhs=self.individual_value, rhs=expected, ok=ok)
            )
        return checks
