"""
bizon command-line entry point.
Routes sub-commands (hilbert, parking, polytope, verify), configures logging and
settings, and maps service errors to exit codes.
"""

import argparse
import logging
import sys
from typing import List, Optional

from commands import hilbert, parking, polytope, verify
from services.errors import BizonError
from services.settings import configure, load_settings

logger = logging.getLogger(__name__)

COMMANDS = (hilbert, parking, polytope, verify)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=None, help="worker processes (default: $BIZON_THREADS or CPU count)")
    common.add_argument("--seed", type=int, default=None, help="corpus seed (default: $BIZON_SEED or config)")
    common.add_argument("--verbose", "-v", action="store_true", help="debug logging on stderr")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--export", metavar="FILE", default=None, help="also write results to FILE.csv or FILE.xlsx")

    parser = argparse.ArgumentParser(
        prog="bizon",
        description="Hilbert functions of bizonotopal algebras of multigraphs, weak parking functions and score vector polytopes.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.add_parser(subparsers, common)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )
    configure(load_settings(threads=args.threads, seed=args.seed))

    try:
        return args.handler(args)
    except BizonError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except ValueError as e:
        # export format and similar argument problems
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
