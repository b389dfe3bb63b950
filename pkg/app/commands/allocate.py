import argparse

import pandas as pd

from app.models.firm.results import AllocationResult
from app.services.allocation.reward_allocation import allocate
from app.services.scenario.scenario_loader import load_scenario
from app.utils.logging_util import logger
from app.utils.tables import render_table, write_csv

ALLOCATION_COLUMNS = ["member_id", "role", "level", "beta", "wage", "value"]


def allocation_frame(result: AllocationResult) -> pd.DataFrame:
    return pd.DataFrame({
        "member_id": [m.member_id for m in result.members],
        "role": [m.role.value for m in result.members],
        "level": pd.array([m.level for m in result.members], dtype="Int64"),
        "beta": [m.beta for m in result.members],
        "wage": [m.wage for m in result.members],
        "value": [m.value for m in result.members],
    })[ALLOCATION_COLUMNS]


def run(args: argparse.Namespace) -> int:
    """Per-member shares, wages and values for one scenario."""
    bundle = load_scenario(args.scenario)
    result = allocate(bundle.scenario)
    frame = allocation_frame(result)

    print(render_table(frame))
    print(f"profit_pool   {result.profit_pool:.6f}")
    print(f"residual_beta {result.residual_beta:.6f}")

    if args.csv:
        write_csv(frame, args.csv)
        logger.info(f"Allocation written to {args.csv}")
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("allocate", help="Allocate dividend shares and values for a scenario")
    parser.add_argument("scenario", help="Path to the scenario JSON file")
    parser.add_argument("--csv", default=None, help="Also write the table as CSV to this path")
    parser.set_defaults(handler=run)
