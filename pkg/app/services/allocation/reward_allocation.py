"""
Reward allocation: wages, hierarchy-level weights, dividend shares and the
value each member takes out of a cycle.

Investors share the royalty r in proportion to the part of the cost they
funded. Employees share 1 - r: each level receives a slice of the standard
normal mass (one sigma for the base level, the next band for level two, and
so on, the top level taking the remaining tail), split inside the level by
performance samples. Without profit nobody gets a dividend.
"""
import math
from collections import defaultdict
from typing import Dict

from scipy.special import erfc

from app.models.firm.results import AllocationResult, MemberAllocation
from app.models.firm.scenario import FirmScenario
from app.utils.errors import AllocationError, DomainError
from app.utils.logging_util import logger

_SQRT2 = math.sqrt(2.0)


def standard_normal_cdf(x: float) -> float:
    """Phi(x) through the complementary error function."""
    return float(0.5 * erfc(-x / _SQRT2))


def _two_sided_tail(k: float) -> float:
    """P(|Z| > k) = 1 - [Phi(k) - Phi(-k)], computed without cancellation."""
    return float(erfc(k / _SQRT2))


def employee_wage(market_wage: float, effort: float) -> float:
    """W = w_r / (1 - effort)."""
    if market_wage < 0:
        raise DomainError(f"market_wage must be >= 0, got {market_wage}")
    if not 0 < effort < 1:
        raise DomainError(f"effort must lie in the open interval (0, 1), got {effort}")
    return market_wage / (1.0 - effort)


def level_weight(n: int, l: int) -> float:
    """
    Share of the employee pool assigned to hierarchy level n out of l.

    The weights of levels 1..l telescope to exactly one.
    """
    if l < 1 or not 1 <= n <= l:
        raise DomainError(f"level {n} is outside 1..{l}")
    if n == l == 1:
        return 1.0
    if n == l:
        return _two_sided_tail(l - 1)
    if n == 1:
        return 1.0 - _two_sided_tail(1)
    return _two_sided_tail(n - 1) - _two_sided_tail(n)


def value_to_individual(wage: float, beta: float, sales: float, costs: float) -> float:
    """V = W + beta * (S - C). Callers pass beta = 0 when there is no profit."""
    if not 0 <= beta <= 1:
        raise DomainError(f"beta must lie in [0, 1], got {beta}")
    return wage + beta * (sales - costs)


def allocate(scenario: FirmScenario) -> AllocationResult:
    r = scenario.royalty_rate
    profit = scenario.profit_pool
    levels = scenario.levels

    invested = sum(m.investment for m in scenario.investors)
    if invested > scenario.costs:
        raise AllocationError(
            f"investors fund {invested:g} but the project costs only {scenario.costs:g}"
        )

    level_samples: Dict[int, int] = defaultdict(int)
    for member in scenario.employees:
        level_samples[member.level] += member.perf_samples
    for level, samples in level_samples.items():
        if samples <= 0:
            raise AllocationError(f"level {level} has employees but zero total performance samples")

    weights = {n: level_weight(n, levels) for n in range(1, levels + 1)}

    if profit <= 0:
        logger.debug(f"No profit (S - C = {profit:g}); dividends are zero")
        members = [
            MemberAllocation(
                member_id=m.id, role=m.role, level=m.level, beta=0.0,
                wage=employee_wage(m.market_wage, m.effort) if m.is_employee else 0.0,
                value=employee_wage(m.market_wage, m.effort) if m.is_employee else 0.0,
            )
            for m in scenario.members
        ]
        return AllocationResult(
            members=members, profit_pool=profit, level_weights=weights, residual_beta=1.0
        )

    members = []
    for m in scenario.members:
        if m.is_investor:
            beta = r * m.investment / scenario.costs
            wage = 0.0
        else:
            beta = (m.perf_samples / level_samples[m.level]) * weights[m.level] * (1.0 - r)
            wage = employee_wage(m.market_wage, m.effort)
        members.append(MemberAllocation(
            member_id=m.id, role=m.role, level=m.level, beta=beta, wage=wage,
            value=value_to_individual(wage, beta, scenario.sales, scenario.costs),
        ))

    funded = invested / scenario.costs if scenario.costs > 0 else 0.0
    empty_levels = sum(w for n, w in weights.items() if n not in level_samples)
    residual = r * (1.0 - funded) + (1.0 - r) * empty_levels
    if residual > 0:
        logger.debug(f"Unallocated share retained by the firm: {residual:.6f}")

    return AllocationResult(
        members=members, profit_pool=profit, level_weights=weights, residual_beta=residual
    )
