"""
Result Display
Rendering of result records, vector lists and check tables as text or JSON.
"""

import json
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, TextIO

import pandas as pd

from services.counting import HilbertPolynomial


@dataclass
class ResultRecord:
    graph: str
    r: int
    method: str
    hilbert: List[int]
    dimension: int
    top_degree: Optional[int]
    top_dimension: int
    wall_time: float = 0.0
    shape: Dict[str, bool] = field(default_factory=dict)

    @classmethod
    def from_polynomial(cls, graph: str, r: int, method: str, h: HilbertPolynomial, wall_time: float) -> "ResultRecord":
        return cls(graph, r, method, list(h.coeffs), h.dimension, h.top_degree, h.top_dimension, wall_time)

    def to_json_dict(self) -> Dict[str, Any]:
        """Stable keys; coefficients and dimensions as decimal strings."""
        payload = {
            "graph": self.graph,
            "r": self.r,
            "method": self.method,
            "hilbert": [str(c) for c in self.hilbert],
            "dimension": str(self.dimension),
            "top_degree": self.top_degree,
            "top_dimension": str(self.top_dimension),
        }
        if self.shape:
            payload["shape"] = self.shape
        return payload

    def to_text(self) -> str:
        lines = [
            f"{self.graph}  r={self.r}  method={self.method}",
            f"dim = {self.dimension}; h(k): {{{', '.join(str(c) for c in self.hilbert)}}}",
            f"top degree {self.top_degree}, top dimension {self.top_dimension} ({self.wall_time:.3f}s)",
        ]
        if self.shape:
            lines.append("unimodal: {unimodal}, log-concave: {log_concave}".format(**self.shape))
        return "\n".join(lines)


def format_vector(v: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def emit(payload: Any, text: str, as_json: bool, out: Optional[TextIO] = None) -> None:
    """Write either the JSON payload or the text rendering."""
    out = out or sys.stdout
    if as_json:
        out.write(json.dumps(payload, indent=2, sort_keys=False) + "\n")
    else:
        out.write(text + "\n")


def emit_vectors(vectors: Iterable[Sequence[int]], as_json: bool, out: Optional[TextIO] = None) -> None:
    ordered = sorted(tuple(v) for v in vectors)
    emit([list(v) for v in ordered], "\n".join(format_vector(v) for v in ordered), as_json, out)


def checks_table(results: List[Any]) -> pd.DataFrame:
    df = pd.DataFrame([{"suite": r.suite, "check": r.name, "status": "PASS" if r.passed else "FAIL", "detail": r.detail} for r in results])
    return df
