"""
Verify Command
Runs the verification suites and prints a pass/fail table. Exit status 1 when any
check fails.
"""

import argparse
import logging

from commands.components.result_display import checks_table, emit
from services.settings import get_settings
from services.suites import SUITES, run_suite
from utils.cache_helper import get_cache_stats
from utils.export_helper import export_records

logger = logging.getLogger(__name__)


def add_parser(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("verify", parents=[common], help="run verification suites")
    parser.add_argument("--suite", choices=SUITES + ("all",), default="all")
    parser.add_argument("--max-n", type=int, default=None, help="largest vertex count the suites may use")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    seed = get_settings().seed
    results = run_suite(args.suite, max_n=args.max_n, seed=seed)
    failed = [r for r in results if not r.passed]
    table = checks_table(results)
    payload = {
        "seed": seed,
        "passed": not failed,
        "checks": [{"suite": r.suite, "check": r.name, "passed": r.passed, "detail": r.detail} for r in results],
    }
    text = f"seed {seed}\n{table.to_string(index=False)}\n{len(results) - len(failed)}/{len(results)} checks passed"
    emit(payload, text, args.json)
    logger.info(f"Cache stats: {get_cache_stats()}")
    if args.export:
        export_records(results, args.export, sheet_name="Checks")
    return 1 if failed else 0
