from typing import Dict, List, Optional, Sequence, Tuple

from app.models.firm.results import AllocationResult, MemberAllocation
from app.models.firm.scenario import FirmScenario
from app.models.group import Provision
from app.models.oracle.cycle import (
    CoaseCheck,
    CycleReport,
    OlsonCheck,
    OracleConfig,
    RoyaltyAdjustment,
    TaskKind,
    TaskSpec,
)
from app.services.allocation.reward_allocation import allocate
from app.services.coase.transaction_costs import firm_viability
from app.services.market.pricing import marginal_costs, operational_uncertainty
from app.services.olson.group_relations import (
    free_rider_check,
    free_rider_incidence,
    provision_probability,
)
from app.services.oracle.curves import productivity
from app.utils.errors import DomainError
from app.utils.logging_util import logger


def check_coase_conditions(etc: float, itc: float, values: Sequence[MemberAllocation]) -> CoaseCheck:
    """
    Internal costs must not exceed external ones, and every member's value
    must strictly exceed the total transaction cost.
    """
    if not values:
        raise DomainError("check_coase_conditions needs at least one member value")
    ttc = itc + etc
    violating = [v.member_id for v in values if not ttc < v.value]
    return CoaseCheck(
        etc=etc,
        itc=itc,
        condition_a=itc <= etc,
        condition_b=not violating,
        violating_members=violating,
    )


def distribute_tasks(tasks: Sequence[TaskSpec], automation_rate: float) -> List[TaskSpec]:
    """
    Apply one cycle of automation to the contract costs of each task.

    AI tasks shed ``automation_rate`` of their legal and organisation cost,
    hybrid tasks half of that, manual tasks nothing. Operational
    uncertainty is endemic to the firm and is never touched.
    """
    if not 0 <= automation_rate <= 1:
        raise DomainError(f"automation_rate must lie in [0, 1], got {automation_rate}")
    factors = {
        TaskKind.AI: 1.0 - automation_rate,
        TaskKind.HYBRID: 1.0 - automation_rate / 2.0,
        TaskKind.MANUAL: 1.0,
    }
    distributed = []
    for task in tasks:
        factor = factors[task.kind]
        distributed.append(task.model_copy(update={
            "legal_cost": task.legal_cost * factor,
            "organisation_cost": task.organisation_cost * factor,
        }))
    return distributed


def cycle_costs(scenario: FirmScenario, tasks: Sequence[TaskSpec]) -> Tuple[float, float, float]:
    """Marginal (ETC, ITC, U_O) of the analysed transactions plus the task contracts."""
    etc, itc = marginal_costs(scenario.cost_breakdowns)
    itc += sum(t.legal_cost + t.organisation_cost for t in tasks)
    return etc, itc, operational_uncertainty(scenario.cost_breakdowns)


class RewardOracleService:
    """
    The monitoring loop run once per contractual cycle.

    Each cycle allocates rewards, checks the Coase and Olson conditions,
    nudges the royalty rate when employees fall to their outside option and
    automates part of the task contracts for the next cycle.
    """

    def __init__(self):
        self.logger = logger

    # ---------------------------------------------------------
    # ROYALTY ADJUSTMENT
    # ---------------------------------------------------------
    def adjust_royalty(
        self,
        scenario: FirmScenario,
        allocation: AllocationResult,
        bounds: Tuple[float, float],
        step: float,
    ) -> RoyaltyAdjustment:
        """
        Single-step rule: if any employee's value does not clear their market
        wage, move ``step`` of the royalty towards labour, never leaving
        ``bounds``. The scenario is re-allocated with the resulting rate.
        """
        r_min, r_max = bounds
        if r_min > r_max:
            raise DomainError(f"royalty bounds are inverted: ({r_min}, {r_max})")
        if step <= 0:
            raise DomainError(f"step must be > 0, got {step}")

        warnings: List[str] = []
        r = scenario.royalty_rate
        if not r_min <= r <= r_max:
            clamped = min(max(r, r_min), r_max)
            warnings.append(f"royalty rate {r:g} outside [{r_min:g}, {r_max:g}]; clamped to {clamped:g}")
            r = clamped

        wages = {m.id: m.market_wage for m in scenario.employees}
        underpaid = [
            entry.member_id for entry in allocation.members
            if entry.member_id in wages and entry.value <= wages[entry.member_id]
        ]
        if underpaid:
            if r > r_min:
                r = max(r_min, r - step)
                self.logger.info(f"Royalty lowered to {r:g}: {', '.join(underpaid)} at or below market wage")
            else:
                warnings.append(
                    f"royalty already at minimum {r_min:g}; employees at or below market wage: {', '.join(underpaid)}"
                )

        for message in warnings:
            self.logger.warning(message)

        if r == scenario.royalty_rate:
            return RoyaltyAdjustment(royalty_rate=r, allocation=allocation, warnings=warnings)
        adjusted = scenario.with_royalty(r)
        return RoyaltyAdjustment(royalty_rate=r, allocation=allocate(adjusted), warnings=warnings)

    # ---------------------------------------------------------
    # ONE CONTRACTUAL CYCLE
    # ---------------------------------------------------------
    def run_cycle(
        self,
        state: FirmScenario,
        tasks: Sequence[TaskSpec],
        prior: Optional[CycleReport] = None,
        config: Optional[OracleConfig] = None,
    ) -> CycleReport:
        config = config or OracleConfig()
        cycle_id = 0 if prior is None else prior.cycle_id + 1
        scenario = state if prior is None else state.with_royalty(prior.adjusted_royalty)
        tasks = list(tasks)

        etc, itc, u_o = cycle_costs(scenario, tasks)
        itc_gap = abs(itc - u_o)

        allocation = allocate(scenario)
        viability = firm_viability(etc, itc, scenario.existence_uncertainty)
        coase = check_coase_conditions(etc, itc, allocation.members)
        olson = self._olson_check(scenario, allocation, itc, config)
        adjustment = self.adjust_royalty(
            scenario, allocation, (config.royalty_min, config.royalty_max), config.royalty_step
        )

        warnings = list(adjustment.warnings)
        if not viability.viable:
            warnings.append(viability.describe())
        if not coase.condition_a:
            warnings.append(f"ITC {itc:.6g} exceeds ETC {etc:.6g} (gap {itc - etc:.6g})")
        if not coase.condition_b:
            warnings.append(
                f"TTC {etc + itc:.6g} not below value of: {', '.join(coase.violating_members)}"
            )
        if olson.incidence.count:
            warnings.append(f"free riders: {', '.join(olson.incidence.member_ids)}")

        report = CycleReport(
            cycle_id=cycle_id,
            royalty_rate=scenario.royalty_rate,
            allocation=allocation,
            viability=viability,
            coase=coase,
            olson=olson,
            operational_uncertainty=u_o,
            itc_gap=itc_gap,
            adjusted_royalty=adjustment.royalty_rate,
            productivity=self._productivity(scenario, allocation),
            tasks=tasks,
            next_tasks=distribute_tasks(tasks, config.automation_rate),
            warnings=warnings,
        )
        self.logger.info(
            f"Cycle {cycle_id} | r={report.royalty_rate:g} -> {report.adjusted_royalty:g} | "
            f"itc_gap={itc_gap:.6g} | coase_ok={report.coase_ok} | free_riders={olson.incidence.count}"
        )
        return report

    def simulate(
        self,
        scenario: FirmScenario,
        tasks: Sequence[TaskSpec],
        config: OracleConfig,
        cycles: int,
    ) -> List[CycleReport]:
        """Chain ``cycles`` cycles; each report feeds royalty and tasks to the next."""
        if cycles < 1:
            raise DomainError(f"cycles must be >= 1, got {cycles}")
        reports: List[CycleReport] = []
        prior: Optional[CycleReport] = None
        current_tasks = list(tasks)
        for _ in range(cycles):
            prior = self.run_cycle(scenario, current_tasks, prior, config)
            reports.append(prior)
            current_tasks = prior.next_tasks
        return reports

    # ---------------------------------------------------------
    # INTERNAL HELPERS
    # ---------------------------------------------------------
    def _olson_check(
        self,
        scenario: FirmScenario,
        allocation: AllocationResult,
        provision_cost: float,
        config: OracleConfig,
    ) -> OlsonCheck:
        incidence = free_rider_incidence(scenario, allocation)
        enthusiasts = sum(
            1 for entry in allocation.members
            if free_rider_check(entry.value, provision_cost) is Provision.PROVIDED
        )
        count = len(allocation.members)
        probability = (
            provision_probability(enthusiasts, count, config.provision_sharpness) if count else 0.0
        )
        return OlsonCheck(
            incidence=incidence,
            enthusiasts=enthusiasts,
            members=count,
            provision_probability=probability,
        )

    def _productivity(self, scenario: FirmScenario, allocation: AllocationResult) -> Dict[str, float]:
        values = {entry.member_id: entry.value for entry in allocation.members}
        return {
            m.id: productivity(max(values[m.id], 0.0), m.fitness)
            for m in scenario.employees
            if m.fitness is not None
        }

# ---------------------------------------------------------
# SINGLETON INSTANCE
# ---------------------------------------------------------
reward_oracle = RewardOracleService()
