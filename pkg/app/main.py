# CLI entry point: python -m app.main <command> ...
import argparse
import sys
from typing import List, Optional

from app.commands import allocate, check, curves, equilibrium, ledger, simulate
from app.utils.errors import DomainError
from app.utils.logging_util import logger, setup_logger

# sysexits-style exit codes
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_SOFTWARE = 70
EXIT_IO = 74


class CliArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors with exit code 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = CliArgumentParser(
        prog="reward-oracle",
        description="Transaction-cost accounting, free-rider checks and reward allocation for a distributed organisation.",
    )
    parser.add_argument("--log-level", default=None, help="Override LOG_LEVEL (DEBUG, INFO, WARNING, ...)")
    subparsers = parser.add_subparsers(dest="command", metavar="<command>")

    allocate.register(subparsers)
    check.register(subparsers)
    equilibrium.register(subparsers)
    simulate.register(subparsers)
    curves.register(subparsers)
    ledger.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    if getattr(args, "handler", None) is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    if args.log_level:
        setup_logger(args.log_level.upper())

    try:
        return args.handler(args)

    except DomainError as exc:
        # Bad scenario values, singular markets, corrupt ledgers
        logger.warning(f"{args.command} failed: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA

    except OSError as exc:
        logger.warning(f"{args.command} I/O failure: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO

    except Exception:
        logger.exception(f"Critical failure in '{args.command}' command")
        return EXIT_SOFTWARE


if __name__ == "__main__":
    sys.exit(main())
