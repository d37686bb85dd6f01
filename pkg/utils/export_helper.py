"""
Export Helper
Tabular exports of result records and verification reports as CSV or Excel.
"""

import logging
from dataclasses import asdict, is_dataclass
from pathlib import Path
from typing import Any, Dict, List, Union

import pandas as pd

logger = logging.getLogger(__name__)

EXPORT_SUFFIXES = (".csv", ".xlsx")


def records_to_frame(records: List[Any]) -> pd.DataFrame:
    """Build a DataFrame from dicts or dataclass instances; list values become comma-joined text."""
    rows: List[Dict[str, Any]] = []
    for record in records:
        row = asdict(record) if is_dataclass(record) else dict(record)
        rows.append({k: ", ".join(str(x) for x in v) if isinstance(v, (list, tuple)) else v for k, v in row.items()})
    return pd.DataFrame(rows)


def export_records(records: List[Any], path: Union[str, Path], sheet_name: str = "Results") -> Path:
    """
    Write records to path, picking the format from the suffix.

    Args:
        records: dicts or dataclass instances with the same keys
        path: target file ending in .csv or .xlsx
        sheet_name: worksheet name for Excel output

    Returns:
        Path: the written file
    """
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix not in EXPORT_SUFFIXES:
        raise ValueError(f"Unsupported export format {suffix!r}; use .csv or .xlsx")
    df = records_to_frame(records)
    if suffix == ".csv":
        df.to_csv(path, index=False)
    else:
        with pd.ExcelWriter(path, engine="openpyxl") as writer:
            df.to_excel(writer, index=False, sheet_name=sheet_name)
    logger.info(f"Exported {len(df)} rows to {path}")
    return path
