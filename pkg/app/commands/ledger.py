import argparse

from app.commands.simulate import cycle_summary
from app.services.ledger.hash_ledger import HashChainLedger
from app.utils.errors import LedgerCorruptError
from app.utils.tables import render_table


def verify(args: argparse.Namespace) -> int:
    verification = HashChainLedger(args.path).verify()
    print(verification.describe())
    if not verification.ok:
        raise LedgerCorruptError(verification.corrupt_seq, verification.reason)
    return 0


def replay(args: argparse.Namespace) -> int:
    reports = HashChainLedger(args.path).replay()
    if not reports:
        print("no cycle entries")
        return 0
    print(render_table(cycle_summary(reports)))
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("ledger", help="Verify or replay a ledger file")
    actions = parser.add_subparsers(dest="ledger_action", metavar="{verify,replay}")

    verify_parser = actions.add_parser("verify", help="Recompute the hash chain")
    verify_parser.add_argument("path", help="Ledger file")
    verify_parser.set_defaults(handler=verify)

    replay_parser = actions.add_parser("replay", help="Print the recorded cycle reports")
    replay_parser.add_argument("path", help="Ledger file")
    replay_parser.set_defaults(handler=replay)
