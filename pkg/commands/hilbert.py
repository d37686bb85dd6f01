"""
Hilbert Command
Hilbert function of B^(r)_G by direct counting, deletion-contraction, the
orientation oracle or a regular-graph closed form, cross-checked against every
other method that applies and is cheap.
"""

import argparse
import logging
import time
from typing import Callable, List, Optional, Tuple

from commands.components.graph_source import add_graph_arguments, load_graph
from commands.components.result_display import ResultRecord, emit
from services.counting import (
    HilbertPolynomial,
    box_bound,
    closed_form_internal_regular,
    hilbert_direct,
    shape_report,
)
from services.delcon import hilbert_delcon
from services.errors import BudgetExceededError, CrossCheckError, InvalidGraphError
from services.multigraph import MultiGraph
from services.oracle import oracle_hilbert_optional, subalgebra_hilbert_via_oracle
from services.settings import get_settings
from utils.export_helper import export_records

logger = logging.getLogger(__name__)

METHODS = ("auto", "direct", "delcon", "oracle", "closed-form")


def add_parser(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("hilbert", parents=[common], help="Hilbert function of B^(r)_G")
    add_graph_arguments(parser)
    parser.add_argument("--r", type=int, required=True, help="1 external, 0 central, -1 internal, any r >= -delta_G")
    parser.add_argument("--method", choices=METHODS, default="auto")
    parser.add_argument("--shape", action="store_true", help="report unimodality and log-concavity")
    parser.set_defaults(handler=run)


def _closed_form(g: MultiGraph, r: int) -> HilbertPolynomial:
    h = closed_form_internal_regular(g) if r == -1 else None
    if h is None:
        raise InvalidGraphError("No closed form applies: needs r=-1 and a simple 3-regular or 4-regular 4-edge-connected graph")
    return h


def compute(g: MultiGraph, r: int, method: str) -> Tuple[str, HilbertPolynomial]:
    """(method actually used, polynomial) with cross-checks against cheap second methods."""
    if method == "auto":
        if r in (0, 1):
            try:
                used, h = "delcon", hilbert_delcon(g, r)
            except BudgetExceededError as e:
                logger.warning(f"Deletion-contraction over budget ({e}); falling back to direct counting")
                used, h = "direct", hilbert_direct(g, r)
        else:
            used, h = "direct", hilbert_direct(g, r)
    elif method == "direct":
        used, h = method, hilbert_direct(g, r)
    elif method == "delcon":
        used, h = method, hilbert_delcon(g, r)
    elif method == "oracle":
        used, h = method, subalgebra_hilbert_via_oracle(g, r)
    else:
        used, h = method, _closed_form(g, r)

    settings = get_settings()
    candidates: List[Tuple[str, Callable[[], Optional[HilbertPolynomial]]]] = []
    if used != "direct" and box_bound(g, r) <= settings.max_box:
        candidates.append(("direct", lambda: hilbert_direct(g, r)))
    if used != "delcon" and r in (0, 1):
        candidates.append(("delcon", lambda: hilbert_delcon(g, r)))
    if used != "oracle":
        candidates.append(("oracle", lambda: oracle_hilbert_optional(g, r, max_edges=settings.max_crosscheck_oracle_edges)))
    if used != "closed-form" and r == -1:
        candidates.append(("closed-form", lambda: closed_form_internal_regular(g)))

    for name, second in candidates:
        try:
            other = second()
        except BudgetExceededError as e:
            logger.info(f"Skipping {name} cross-check: {e}")
            continue
        if other is not None and other != h:
            logger.error(f"{used} and {name} disagree on {g} r={r}: {h} vs {other}")
            raise CrossCheckError(f"{used} gives [{h}] but {name} gives [{other}]")
    return used, h


def run(args: argparse.Namespace) -> int:
    g, label = load_graph(args)
    start = time.perf_counter()
    used, h = compute(g, args.r, args.method)
    record = ResultRecord.from_polynomial(label, args.r, used, h, time.perf_counter() - start)
    if args.shape:
        record.shape = shape_report(h)
    emit(record.to_json_dict(), record.to_text(), args.json)
    if args.export:
        export_records([record], args.export, sheet_name="Hilbert")
    return 0
