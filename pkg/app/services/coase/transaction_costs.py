"""
Transaction-cost identity and firm-existence rules.

A firm exists while organising a transaction inside it costs no more than
buying it on the market (ETC >= ITC) and while its operation is uncertain
(U_e != 0). It keeps expanding while the marginal internal cost does not
exceed the marginal external cost.
"""
import math
from typing import Iterable, List, Optional

from app.models.firm.results import (
    BudgetViolation,
    BudgetViolationKind,
    Verdict,
    Viability,
    ViabilityFailure,
)
from app.models.firm.scenario import FirmScenario
from app.services.allocation.reward_allocation import employee_wage
from app.utils.errors import DomainError


def _require_cost(name: str, value: float) -> None:
    if not math.isfinite(value) or value < 0:
        raise DomainError(f"{name} must be finite and non-negative, got {value}")


def total_transaction_cost(etc: float, itc: float) -> float:
    """TTC = ETC + ITC."""
    _require_cost("etc", etc)
    _require_cost("itc", itc)
    return etc + itc


def labour_cost(wages: Iterable[float]) -> float:
    """Cost of labour: the sum of the wages paid out of the profit."""
    total = 0.0
    for wage in wages:
        _require_cost("wage", wage)
        total += wage
    return total


def firm_viability(etc: float, itc: float, u_e: float) -> Viability:
    _require_cost("etc", etc)
    _require_cost("itc", itc)
    _require_cost("u_e", u_e)
    if etc < itc:
        return Viability(viable=False, reason=ViabilityFailure.COST_INVERSION)
    if u_e == 0:
        return Viability(viable=False, reason=ViabilityFailure.ZERO_UNCERTAINTY)
    return Viability(viable=True)


def is_strict_market_firm(etc: float, itc: float) -> bool:
    """Strict form of the cost rule: using the price mechanism costs more than organising."""
    _require_cost("etc", etc)
    _require_cost("itc", itc)
    return etc > itc


def expansion_decision(mitc: float, metc: float) -> Verdict:
    """Expand while MITC <= METC (equality still expands)."""
    _require_cost("mitc", mitc)
    _require_cost("metc", metc)
    return Verdict.EXPAND if mitc <= metc else Verdict.STOP


def check_budgets(
    scenario: FirmScenario,
    ttc_sum: float,
    price: float,
    wages: Optional[dict] = None,
    equilibrium_price: Optional[float] = None,
) -> List[BudgetViolation]:
    """
    Role-budget constraints.

    Investor: M_i <= sum of TTC. Customer: M_c <= P (and <= the equilibrium
    price when given). Worker: the paid wage must reach the reservation M_m.
    ``wages`` maps member id to paid wage; when omitted it is derived from
    each employee's market wage and effort.
    """
    _require_cost("ttc_sum", ttc_sum)
    _require_cost("price", price)
    budgets = scenario.budgets
    if budgets is None:
        return []

    violations: List[BudgetViolation] = []
    if budgets.investor_budget > ttc_sum:
        violations.append(BudgetViolation(
            kind=BudgetViolationKind.INVESTOR_OVER_BUDGET, role="Investor",
            budget=budgets.investor_budget, amount=ttc_sum,
        ))
    if budgets.customer_budget > price:
        violations.append(BudgetViolation(
            kind=BudgetViolationKind.CUSTOMER_OVER_BUDGET, role="Customer",
            budget=budgets.customer_budget, amount=price,
        ))
    if equilibrium_price is not None and budgets.customer_budget > equilibrium_price:
        violations.append(BudgetViolation(
            kind=BudgetViolationKind.CUSTOMER_ABOVE_EQUILIBRIUM, role="Customer",
            budget=budgets.customer_budget, amount=equilibrium_price,
        ))
    for member in scenario.employees:
        paid = (wages or {}).get(member.id)
        if paid is None:
            paid = employee_wage(member.market_wage, member.effort)
        if paid < budgets.worker_reservation:
            violations.append(BudgetViolation(
                kind=BudgetViolationKind.WAGE_BELOW_RESERVATION, role="Employee",
                member_id=member.id, budget=budgets.worker_reservation, amount=paid,
            ))
    return violations
