import argparse
from typing import List

from app.services.allocation.reward_allocation import allocate
from app.services.coase.transaction_costs import (
    check_budgets,
    expansion_decision,
    firm_viability,
    is_strict_market_firm,
    labour_cost,
    total_transaction_cost,
)
from app.services.market.pricing import equilibrium_price
from app.services.olson.group_relations import (
    free_rider_incidence,
    group_constant,
    group_size_from_constant,
    infer_k_omega,
    oligopoly_probability,
)
from app.services.oracle.reward_oracle import check_coase_conditions, cycle_costs
from app.services.scenario.scenario_loader import load_scenario
from app.utils.errors import SingularMarketError
from app.utils.logging_util import logger

# Exit code when any existence, budget or free-rider condition fails
EXIT_VIOLATION = 2


def run(args: argparse.Namespace) -> int:
    """Existence, Coase, budget and free-rider conditions of one scenario."""
    bundle = load_scenario(args.scenario)
    scenario = bundle.scenario
    violations: List[str] = []

    etc, itc, _ = cycle_costs(scenario, bundle.tasks)
    ttc = total_transaction_cost(etc, itc)

    # --- Firm existence ---
    viability = firm_viability(etc, itc, scenario.existence_uncertainty)
    print(f"viability      {viability.describe()}")
    print(f"strict_etc>itc {is_strict_market_firm(etc, itc)}")
    print(f"expansion      {expansion_decision(itc, etc).value} (MITC={itc:.6f}, METC={etc:.6f})")
    if not viability.viable:
        violations.append(viability.describe())

    # --- Coase prerequisites ---
    allocation = allocate(scenario)
    wages = {m.member_id: m.wage for m in allocation.members}
    print(f"labour_cost    {labour_cost(wages.values()):.6f}")
    coase = check_coase_conditions(etc, itc, allocation.members)
    print(f"coase_a        {'pass' if coase.condition_a else 'FAIL'} (ITC={itc:.6f} <= ETC={etc:.6f})")
    print(f"coase_b        {'pass' if coase.condition_b else 'FAIL'} (TTC={ttc:.6f} < V for every member)")
    if not coase.condition_a:
        violations.append("ITC exceeds ETC")
    if not coase.condition_b:
        violations.append(f"TTC not below value of: {', '.join(coase.violating_members)}")

    # --- Role budgets ---
    try:
        equilibrium = equilibrium_price(scenario.market).price
    except SingularMarketError as exc:
        logger.warning(f"Equilibrium budget clause skipped: {exc}")
        equilibrium = None
    budget_violations = check_budgets(scenario, ttc, ttc, wages=wages, equilibrium_price=equilibrium)
    if scenario.budgets is None:
        print("budgets        (none declared)")
    elif not budget_violations:
        print("budgets        pass")
    for violation in budget_violations:
        print(f"budgets        FAIL {violation.describe()}")
        violations.append(violation.describe())

    # --- Free riders ---
    incidence = free_rider_incidence(scenario, allocation)
    print(f"free_riders    {incidence.count} {' '.join(incidence.member_ids)}".rstrip())
    if incidence.count:
        violations.append(f"free riders: {', '.join(incidence.member_ids)}")

    # --- Group relations (optional block) ---
    group = bundle.group
    if group is not None:
        for relation in group.consistency_checks():
            status = "pass" if relation.ok else "FAIL"
            print(f"group          {status} {relation.relation} ({relation.lhs:.6f} vs {relation.rhs:.6f})")
            if not relation.ok:
                violations.append(f"group relation {relation.relation}")
        if group.k_o is not None and group.individual_value != 0:
            k_g = group_constant(group.k_o, group.group_value)
            size = group_size_from_constant(k_g, group.individual_value)
            print(f"k_g            {k_g:.6f} (implied S_g={size:.6f})")
        if group.organisation_cost and group.organisation_cost > 0:
            k_omega, performance = infer_k_omega(group.group_size, group.organisation_cost)
            print(f"k_omega        {k_omega:.6f} {performance.value}")
        if group.k_v and group.k_v > 0:
            print(f"oligopoly_prob {oligopoly_probability(group.k_v, group.group_size):.6f}")

    if violations:
        logger.warning(f"{len(violations)} condition(s) violated")
        return EXIT_VIOLATION
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("check", help="Check existence, Coase, budget and free-rider conditions")
    parser.add_argument("scenario", help="Path to the scenario JSON file")
    parser.set_defaults(handler=run)
