import argparse
from typing import List

import pandas as pd

from app.models.oracle.cycle import CycleReport
from app.services.ledger.hash_ledger import HashChainLedger
from app.services.oracle.reward_oracle import reward_oracle
from app.services.scenario.scenario_loader import load_scenario
from app.utils.logging_util import logger
from app.utils.tables import render_table


def cycle_summary(reports: List[CycleReport]) -> pd.DataFrame:
    return pd.DataFrame({
        "cycle": [r.cycle_id for r in reports],
        "royalty": [r.royalty_rate for r in reports],
        "adjusted_royalty": [r.adjusted_royalty for r in reports],
        "itc_gap": [r.itc_gap for r in reports],
        "free_riders": [r.olson.incidence.count for r in reports],
        "coase_ok": [r.coase_ok for r in reports],
    })


def run(args: argparse.Namespace) -> int:
    """Run N oracle cycles and record tasks and reports on the ledger."""
    bundle = load_scenario(args.scenario)
    # Nothing reaches the ledger unless every cycle ran
    reports = reward_oracle.simulate(bundle.scenario, bundle.tasks, bundle.oracle, args.cycles)

    ledger = HashChainLedger(args.ledger)
    for task in bundle.tasks:
        ledger.append_task(task)
    for report in reports:
        ledger.append_report(report)
    logger.info(f"Simulated {len(reports)} cycles into {args.ledger}")

    print(render_table(cycle_summary(reports)))
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("simulate", help="Run oracle cycles and append them to a ledger")
    parser.add_argument("scenario", help="Path to the scenario JSON file")
    parser.add_argument("--cycles", type=int, default=1, help="Number of contractual cycles")
    parser.add_argument("--ledger", required=True, help="Ledger file to append to")
    parser.set_defaults(handler=run)
