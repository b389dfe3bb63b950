import argparse

from app.services.oracle.curves import emit_curves
from app.utils.logging_util import logger
from app.utils.tables import render_table, write_csv


def run(args: argparse.Namespace) -> int:
    frame = emit_curves(args.which, args.samples, band=args.band)
    if args.csv:
        write_csv(frame, args.csv)
        logger.info(f"{args.which} curves written to {args.csv}")
    else:
        print(render_table(frame))
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("curves", help="Emit the value-by-level or productivity series")
    parser.add_argument("--which", choices=["vi", "productivity"], required=True)
    parser.add_argument("--samples", type=int, default=20, help="Number of sample points (>= 2)")
    parser.add_argument("--band", action="store_true", help="Add the band between the typical and ideal series")
    parser.add_argument("--csv", default=None, help="Write the series as CSV to this path")
    parser.set_defaults(handler=run)
