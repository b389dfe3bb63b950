import math
import time

import numpy as np
import pytest
from scipy.integrate import quad

from app.models.firm.scenario import FirmScenario, Member, Role
from app.services.allocation.reward_allocation import (
    allocate,
    employee_wage,
    level_weight,
    standard_normal_cdf,
    value_to_individual,
)
from app.services.coase.transaction_costs import labour_cost
from app.utils.errors import AllocationError, DomainError

# =========================================================================
# WORKED EXAMPLE
# =========================================================================
EXPECTED_BETA = {"I0": 0.1, "I1": 0.2, "M3": 0.2221, "E4": 0.2389, "E5": 0.2389}
EXPECTED_VALUE = {"I0": 2.5, "I1": 5.0, "M3": 18.0528, "E4": 15.9736, "E5": 13.4736}


def test_worked_example_shares_and_values(worked_scenario):
    result = allocate(worked_scenario).by_id()
    for member_id, beta in EXPECTED_BETA.items():
        assert result[member_id].beta == pytest.approx(beta, abs=1e-3), (
            f"beta of {member_id} is {result[member_id].beta}, expected {beta}"
        )
    for member_id, value in EXPECTED_VALUE.items():
        assert result[member_id].value == pytest.approx(value, abs=2e-3), (
            f"value of {member_id} is {result[member_id].value}, expected {value}"
        )


def test_worked_example_is_fully_allocated(worked_scenario):
    result = allocate(worked_scenario)
    assert result.profit_pool == 25
    assert result.residual_beta == pytest.approx(0.0, abs=1e-12)
    assert result.beta_total == pytest.approx(1.0, abs=1e-9)
    assert labour_cost(m.wage for m in result.members) == pytest.approx(30.0)
    assert result.dividend_total == pytest.approx(25.0)


def test_worked_example_runs_under_a_millisecond(worked_scenario):
    allocate(worked_scenario)
    runs = 200
    start = time.perf_counter()
    for _ in range(runs):
        allocate(worked_scenario)
    assert (time.perf_counter() - start) / runs < 1e-3


def test_loss_zeroes_every_share(worked_scenario):
    loss = worked_scenario.model_copy(update={"sales": 70})
    result = allocate(loss).by_id()
    assert all(entry.beta == 0 for entry in result.values())
    values = {member_id: entry.value for member_id, entry in result.items()}
    assert values == pytest.approx({"I0": 0, "I1": 0, "M3": 12.5, "E4": 10, "E5": 7.5})
    assert allocate(loss).residual_beta == 1.0


def test_single_employee_takes_everything(make_employee):
    scenario = FirmScenario(
        members=[make_employee("E1", 4, effort=0.5)], levels=1, royalty_rate=0.0, sales=20, costs=10,
    )
    entry = allocate(scenario).by_id()["E1"]
    assert entry.beta == pytest.approx(1.0)
    assert entry.value == pytest.approx(18.0)


# =========================================================================
# LEVEL WEIGHTS
# =========================================================================
LEVEL_WEIGHT_CASES = [
    {"n": 1, "l": 1, "expected": 1.0},
    {"n": 1, "l": 2, "expected": 0.682689},
    {"n": 2, "l": 2, "expected": 0.317311},
]


@pytest.mark.parametrize("case", LEVEL_WEIGHT_CASES)
def test_level_weight(case):
    result = level_weight(case["n"], case["l"])
    assert result == pytest.approx(case["expected"], abs=1e-6), f"Gamma({case['n']}, {case['l']}) = {result}"


def test_level_weight_against_numeric_integration():
    density = lambda x: math.exp(-x * x / 2.0) / math.sqrt(2.0 * math.pi)
    for n in range(1, 6):
        inner, _ = quad(density, -(n - 1), n - 1) if n > 1 else (0.0, 0.0)
        outer, _ = quad(density, -n, n)
        expected = outer if n == 1 else outer - inner
        assert level_weight(n, 8) == pytest.approx(expected, abs=1e-10), f"Mismatch at level {n}"


def test_standard_normal_cdf_against_numeric_integration():
    density = lambda x: math.exp(-x * x / 2.0) / math.sqrt(2.0 * math.pi)
    for x in (-3.0, -1.0, 0.0, 0.5, 2.0):
        expected = 0.5 + quad(density, 0.0, x)[0]
        assert standard_normal_cdf(x) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("levels", range(1, 65))
def test_level_weights_partition_unity(levels):
    total = sum(level_weight(n, levels) for n in range(1, levels + 1))
    assert abs(total - 1.0) <= 1e-12, f"Weights of {levels} levels sum to {total}"


@pytest.mark.parametrize("levels", range(3, 9))
def test_level_weights_decrease_upwards(levels):
    weights = [level_weight(n, levels) for n in range(1, levels)]
    assert all(w >= 0 for w in weights)
    assert all(a > b for a, b in zip(weights, weights[1:])), f"Not decreasing: {weights}"


@pytest.mark.parametrize("n, l", [(0, 2), (3, 2), (1, 0)])
def test_level_weight_out_of_range(n, l):
    with pytest.raises(DomainError):
        level_weight(n, l)


# =========================================================================
# WAGES AND VALUE
# =========================================================================
@pytest.mark.parametrize("market_wage, effort, expected", [(5, 0.6, 12.5), (4, 0.6, 10.0), (3, 1e-12, 3.0)])
def test_employee_wage(market_wage, effort, expected):
    assert employee_wage(market_wage, effort) == pytest.approx(expected)


def test_employee_wage_increases_with_effort():
    efforts = np.linspace(0.01, 1 - 1e-6, 200)
    wages = [employee_wage(4.0, float(e)) for e in efforts]
    assert all(a < b for a, b in zip(wages, wages[1:]))
    assert wages[-1] == pytest.approx(4.0e6, rel=1e-6)


@pytest.mark.parametrize("effort", [0.0, 1.0, -0.1, 1.2])
def test_employee_wage_rejects_effort_outside_open_interval(effort):
    with pytest.raises(DomainError):
        employee_wage(4.0, effort)


VALUE_CASES = [
    {"wage": 12.5, "beta": 0.2221, "sales": 100, "costs": 75, "expected": 18.0525},
    {"wage": 0.0, "beta": 0.1, "sales": 100, "costs": 75, "expected": 2.5},
    {"wage": 7.0, "beta": 0.0, "sales": 100, "costs": 75, "expected": 7.0},
]


@pytest.mark.parametrize("case", VALUE_CASES)
def test_value_to_individual(case):
    result = value_to_individual(case["wage"], case["beta"], case["sales"], case["costs"])
    assert result == pytest.approx(case["expected"])


def test_value_to_individual_rejects_bad_share():
    with pytest.raises(DomainError):
        value_to_individual(1.0, 1.5, 10, 5)


# =========================================================================
# ALLOCATION ERRORS AND RESIDUALS
# =========================================================================
def test_overfunding_is_rejected(make_investor):
    scenario = FirmScenario(
        members=[make_investor("I0", 50), make_investor("I1", 40)],
        levels=1, royalty_rate=0.3, sales=100, costs=75,
    )
    with pytest.raises(AllocationError):
        allocate(scenario)


def test_underfunding_leaves_a_residual(worked_scenario):
    scenario = FirmScenario.model_validate({
        **worked_scenario.model_dump(),
        "members": [m.model_dump() for m in worked_scenario.members if m.id != "I1"],
    })
    result = allocate(scenario)
    assert result.residual_beta == pytest.approx(0.3 * (1 - 25 / 75))
    assert result.beta_total + result.residual_beta == pytest.approx(1.0, abs=1e-12)


def test_empty_level_weight_is_retained(make_employee):
    scenario = FirmScenario(
        members=[make_employee("E1", 4)], levels=2, royalty_rate=0.0, sales=100, costs=75,
    )
    result = allocate(scenario)
    assert result.by_id()["E1"].beta == pytest.approx(level_weight(1, 2))
    assert result.residual_beta == pytest.approx(level_weight(2, 2))


# =========================================================================
# RANDOMISED PROPERTIES
# =========================================================================
def _random_funded_scenario(rng: np.random.Generator, profitable: bool = True) -> FirmScenario:
    levels = int(rng.integers(1, 6))
    costs = int(rng.integers(10, 1000))
    investor_count = int(rng.integers(1, 4))
    cuts = sorted(rng.choice(np.arange(1, costs), size=investor_count - 1, replace=False).tolist())
    investments = [b - a for a, b in zip([0] + cuts, cuts + [costs])]

    members = [
        Member(id=f"I{i}", role=Role.INVESTOR, investment=float(p)) for i, p in enumerate(investments)
    ]
    for level in range(1, levels + 1):
        for k in range(int(rng.integers(1, 4))):
            members.append(Member(
                id=f"E{level}-{k}", role=Role.EMPLOYEE,
                market_wage=float(rng.uniform(1, 20)),
                effort=float(rng.uniform(0.05, 0.95)),
                perf_samples=int(rng.integers(1, 6)),
                level=level,
            ))
    margin = float(rng.uniform(1, 100))
    sales = costs + margin if profitable else max(0.0, costs - margin)
    return FirmScenario(
        members=members, levels=levels, royalty_rate=float(rng.uniform(0, 1)), sales=sales, costs=costs,
    )


def test_shares_are_conserved_over_random_scenarios():
    rng = np.random.default_rng(42)
    scenarios = [_random_funded_scenario(rng) for _ in range(1000)]
    start = time.perf_counter()
    results = [allocate(s) for s in scenarios]
    elapsed = time.perf_counter() - start

    for scenario, result in zip(scenarios, results):
        investor_beta = sum(m.beta for m in result.members if m.role is Role.INVESTOR)
        employee_beta = sum(m.beta for m in result.members if m.role is Role.EMPLOYEE)
        assert investor_beta == pytest.approx(scenario.royalty_rate, abs=1e-9)
        assert employee_beta == pytest.approx(1 - scenario.royalty_rate, abs=1e-9)
        assert result.beta_total == pytest.approx(1.0, abs=1e-9)
    assert elapsed < 1.0, f"1000 allocations took {elapsed:.3f}s"


def test_losses_pay_wages_only():
    rng = np.random.default_rng(43)
    for _ in range(200):
        scenario = _random_funded_scenario(rng, profitable=False)
        wages = {m.id: employee_wage(m.market_wage, m.effort) for m in scenario.employees}
        for entry in allocate(scenario).members:
            assert entry.beta == 0
            assert entry.value == pytest.approx(wages.get(entry.member_id, 0.0))


def test_allocation_is_scale_invariant():
    rng = np.random.default_rng(44)
    for _ in range(100):
        scenario = _random_funded_scenario(rng)
        # Powers of two keep the scaled investments summing exactly to the scaled cost
        scale = 2.0 ** int(rng.integers(-3, 4))
        scaled = FirmScenario.model_validate({
            **scenario.model_dump(),
            "sales": scenario.sales * scale,
            "costs": scenario.costs * scale,
            "members": [
                {**m.model_dump(), "investment": m.investment * scale} for m in scenario.members
            ],
        })
        base, other = allocate(scenario).by_id(), allocate(scaled).by_id()
        for member_id, entry in base.items():
            assert other[member_id].beta == pytest.approx(entry.beta, rel=1e-9, abs=1e-12)
            assert other[member_id].value - other[member_id].wage == pytest.approx(
                scale * (entry.value - entry.wage), rel=1e-9, abs=1e-9
            )
