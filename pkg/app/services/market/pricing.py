"""
Price, cost composition and uncertainty computations.

Price is the sum of transaction costs; on the market side the internal part
is zero. Supply and demand are linear in price, and the inflation
expectation of the demand curve is the same variable as the price
uncertainty that inflates external costs.
"""
import math
from typing import List, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from app.models.firm.scenario import CostBreakdown, FirmScenario, MarketParams
from app.utils.errors import DomainError, SingularMarketError
from app.utils.logging_util import logger

# Slopes whose sum is closer to zero than this are treated as singular
SINGULAR_SLOPE_TOLERANCE = 1e-12


class EquilibriumPrice(BaseModel):
    model_config = ConfigDict(frozen=True)

    price: float
    negative: bool


class EquilibriumReport(BaseModel):
    """Equilibrium price next to the firm's cost-sum price, and their gap."""
    model_config = ConfigDict(frozen=True)

    price: float
    negative: bool
    residual: float
    ttc_sum: float
    market_price: float
    gap: float


def etc_compose(b: CostBreakdown) -> float:
    """ETC = (1 + U_p) * (land + labour + capital)."""
    return (1.0 + b.price_uncertainty) * (b.land + b.labour + b.capital)


def itc_compose(b: CostBreakdown) -> float:
    """ITC = legal cost + organisation cost + operational uncertainty."""
    return b.legal_cost + b.organisation_cost + b.operational_uncertainty


def price_from_costs(breakdowns: Sequence[CostBreakdown], market_side: bool = False) -> float:
    if not breakdowns:
        raise DomainError("price_from_costs needs at least one cost breakdown")
    total = 0.0
    for b in breakdowns:
        total += etc_compose(b)
        if not market_side:
            total += itc_compose(b)
    return total


def equilibrium_price(m: MarketParams) -> EquilibriumPrice:
    """P = (c + e*U_p - a) / (b + d); negative prices are flagged, not rejected."""
    slope = m.b + m.d
    if abs(slope) <= SINGULAR_SLOPE_TOLERANCE:
        raise SingularMarketError(f"b + d = {slope}: supply and demand slopes cancel")
    price = (m.c + m.e * m.inflation_expectation - m.a) / slope
    negative = price < 0
    if negative:
        logger.warning(f"Equilibrium price is negative ({price:.6g}); behavioural constants admit it")
    return EquilibriumPrice(price=price, negative=negative)


def equilibrium_residual(m: MarketParams, p: float) -> float:
    """Supply minus demand at price p."""
    return (m.a + m.b * p) - (m.c - m.d * p + m.e * m.inflation_expectation)


def hurwicz_select(options: Sequence[Tuple[float, float]], optimism: float) -> Tuple[int, float]:
    """
    Pick the option with the best optimism-weighted payoff.

    Each option is (optimistic, pessimistic); pessimism is 1 - optimism.
    Ties go to the lowest index.
    """
    if not options:
        raise DomainError("hurwicz_select needs at least one option")
    if not 0.0 <= optimism <= 1.0:
        raise DomainError(f"optimism must lie in [0, 1], got {optimism}")

    best_index, best_value = -1, -math.inf
    for index, (optimistic, pessimistic) in enumerate(options):
        if optimistic < pessimistic:
            raise DomainError(
                f"option {index}: optimistic payoff {optimistic} is below pessimistic payoff {pessimistic}"
            )
        value = optimism * optimistic + (1.0 - optimism) * pessimistic
        if value > best_value:
            best_index, best_value = index, value
    return best_index, best_value


def operational_uncertainty_from_hurwicz(expected_payoff: float, hurwicz_value: float) -> float:
    """Uncertainty surcharge: how far the Hurwicz value falls short of the expectation."""
    if not (math.isfinite(expected_payoff) and math.isfinite(hurwicz_value)):
        raise DomainError("payoffs must be finite")
    return max(0.0, expected_payoff - hurwicz_value)


def equilibrium_report(scenario: FirmScenario) -> EquilibriumReport:
    """
    Compare the cost-sum price with the market equilibrium price.

    The discrepancy is only reported; nothing adjusts costs to close it.
    """
    equilibrium = equilibrium_price(scenario.market)
    ttc_sum = price_from_costs(scenario.cost_breakdowns)
    market_price = price_from_costs(scenario.cost_breakdowns, market_side=True)
    return EquilibriumReport(
        price=equilibrium.price,
        negative=equilibrium.negative,
        residual=equilibrium_residual(scenario.market, equilibrium.price),
        ttc_sum=ttc_sum,
        market_price=market_price,
        gap=ttc_sum - equilibrium.price,
    )


def marginal_costs(breakdowns: Sequence[CostBreakdown]) -> Tuple[float, float]:
    """(ETC, ITC) summed over the analysed transactions; zero when there are none."""
    etc = sum(etc_compose(b) for b in breakdowns)
    itc = sum(itc_compose(b) for b in breakdowns)
    return etc, itc


def operational_uncertainty(breakdowns: List[CostBreakdown]) -> float:
    return sum(b.operational_uncertainty for b in breakdowns)
