import json
from pathlib import Path

import pytest

from app.models.firm.scenario import CostBreakdown, FirmScenario, MarketParams, Member, Role

ROOT = Path(__file__).resolve().parent.parent
WORKED_SCENARIO_PATH = ROOT / "scenarios" / "worked_example.json"


# =========================================================================
# MEMBER FACTORIES
# =========================================================================
@pytest.fixture
def make_investor():
    def factory(member_id: str, investment: float) -> Member:
        return Member(id=member_id, role=Role.INVESTOR, investment=investment)
    return factory


@pytest.fixture
def make_employee():
    def factory(member_id: str, market_wage: float, level: int = 1, perf_samples: int = 1,
                effort: float = 0.6, fitness: float = None) -> Member:
        return Member(
            id=member_id, role=Role.EMPLOYEE, market_wage=market_wage, effort=effort,
            perf_samples=perf_samples, level=level, fitness=fitness,
        )
    return factory


# =========================================================================
# THE WORKED EXAMPLE
# =========================================================================
# Two investors (25 and 50 of a 75 cost), a manager alone at level 2 and
# two base-level employees, r = 0.3, S = 100, C = 75, effort 0.6 for all.
@pytest.fixture
def worked_scenario(make_investor, make_employee) -> FirmScenario:
    return FirmScenario(
        members=[
            make_investor("I0", 25),
            make_investor("I1", 50),
            make_employee("M3", 5, level=2, fitness=2.0),
            make_employee("E4", 4, level=1, fitness=1.0),
            make_employee("E5", 3, level=1, fitness=1.0),
        ],
        levels=2,
        royalty_rate=0.3,
        sales=100,
        costs=75,
        cost_breakdowns=[
            CostBreakdown(
                land=1, labour=2, capital=3, price_uncertainty=0.1,
                legal_cost=1.0, organisation_cost=0.5, operational_uncertainty=0.5,
            )
        ],
        market=MarketParams(a=0, b=1, c=10, d=1, e=2, inflation_expectation=0.1),
        existence_uncertainty=0.1,
    )


@pytest.fixture
def worked_document() -> dict:
    return json.loads(WORKED_SCENARIO_PATH.read_text(encoding="utf-8"))


@pytest.fixture
def write_scenario(tmp_path):
    """Write a scenario document to a temporary file and return its path."""
    def writer(document: dict, name: str = "scenario.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(document, indent=2), encoding="utf-8")
        return path
    return writer
