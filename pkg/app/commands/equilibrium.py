import argparse

from app.services.market.pricing import equilibrium_report
from app.services.scenario.scenario_loader import load_scenario


def run(args: argparse.Namespace) -> int:
    """Equilibrium price, its residual and the gap to the cost-sum price."""
    bundle = load_scenario(args.scenario)
    report = equilibrium_report(bundle.scenario)

    print(f"equilibrium_price {report.price:.6f}{'  (negative)' if report.negative else ''}")
    print(f"residual          {report.residual:.6f}")
    print(f"ttc_sum           {report.ttc_sum:.6f}")
    print(f"market_price      {report.market_price:.6f}")
    print(f"ttc_gap           {report.gap:.6f}")
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("equilibrium", help="Report the market equilibrium against the cost-sum price")
    parser.add_argument("scenario", help="Path to the scenario JSON file")
    parser.set_defaults(handler=run)
