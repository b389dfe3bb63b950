"""
Group-size relations and free-rider predicates.

The larger the group, the smaller the fraction of the group value any one
member receives, the smaller the chance that a few members provide the
collective good, and the higher the organisation cost.
"""
import math
from typing import List, Tuple

from app.models.firm.results import AllocationResult
from app.models.firm.scenario import FirmScenario
from app.models.group import Performance, Provision
from app.models.oracle.cycle import FreeRiderIncidence
from app.utils.errors import DomainError


def _require_k_o(k_o: float) -> None:
    if not 0 < k_o <= 1:
        raise DomainError(f"k_o must lie in (0, 1], got {k_o}")


def group_size_from_values(k_o: float, v_g: float, v_i: float) -> float:
    """S_g = k_o * V_g / V_i."""
    _require_k_o(k_o)
    if v_i == 0:
        raise DomainError("individual value v_i must be non-zero")
    return k_o * v_g / v_i


def group_constant(k_o: float, v_g: float) -> float:
    """k_g = k_o * V_g."""
    _require_k_o(k_o)
    return k_o * v_g


def group_size_from_constant(k_g: float, v_i: float) -> float:
    """S_g = k_g / V_i, the special case of the k_o form."""
    if v_i == 0:
        raise DomainError("individual value v_i must be non-zero")
    return k_g / v_i


def infer_k_omega(group_size: float, organisation_cost: float) -> Tuple[float, Performance]:
    """k_omega = S_g / C_o; a value in (0, 1] marks an underperforming company."""
    if organisation_cost <= 0:
        raise DomainError(f"organisation_cost must be > 0, got {organisation_cost}")
    k_omega = group_size / organisation_cost
    performance = Performance.HEALTHY if k_omega > 1 else Performance.UNDERPERFORMING
    return k_omega, performance


def oligopoly_probability(k_v: float, group_size: float) -> float:
    """P_o = k_v / S_g, capped at 1."""
    if k_v <= 0 or group_size <= 0:
        raise DomainError(f"k_v and group_size must be > 0, got k_v={k_v}, group_size={group_size}")
    return min(1.0, k_v / group_size)


def free_rider_check(v_i: float, cost: float) -> Provision:
    """The good is provided when one member values it strictly above its full cost."""
    if not (math.isfinite(v_i) and math.isfinite(cost)):
        raise DomainError("value and cost must be finite")
    return Provision.PROVIDED if v_i > cost else Provision.AT_RISK


def provision_probability(enthusiasts: int, members: int, sharpness: float = 2.0) -> float:
    """
    Probability that the collective good is provided.

    Unanimity gives 1; otherwise (enthusiasts / members) ** sharpness, which
    vanishes as the enthusiastic share shrinks.
    """
    if members < 1:
        raise DomainError(f"members must be >= 1, got {members}")
    if not 0 <= enthusiasts <= members:
        raise DomainError(f"enthusiasts must lie in [0, {members}], got {enthusiasts}")
    if sharpness <= 0:
        raise DomainError(f"sharpness must be > 0, got {sharpness}")
    if enthusiasts == members:
        return 1.0
    return (enthusiasts / members) ** sharpness


def free_rider_incidence(scenario: FirmScenario, allocation: AllocationResult) -> FreeRiderIncidence:
    """
    Members riding on the group without a stake in its surplus.

    Counted only when there is a surplus: members with a zero share, and
    employees whose value does not clear their market wage.
    """
    if scenario.profit_pool <= 0:
        return FreeRiderIncidence(count=0, member_ids=[])

    members = {m.id: m for m in scenario.members}
    riders: List[str] = []
    for entry in allocation.members:
        member = members.get(entry.member_id)
        if member is None:
            raise DomainError(f"allocation names unknown member '{entry.member_id}'")
        if entry.beta == 0 or (member.is_employee and entry.value <= member.market_wage):
            riders.append(entry.member_id)
    return FreeRiderIncidence(count=len(riders), member_ids=riders)
