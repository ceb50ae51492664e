import csv
import io
import json
import logging
import math
import os
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from filelock import FileLock

from errors import MsnValidationError

logger = logging.getLogger(__name__)

SIGNIFICANT_DIGITS = 12


@dataclass(frozen=True)
class MeasureReport:
    measure: str
    alpha: Optional[int]
    rows: List[Tuple[str, float]]
    summary: Dict[str, Any] = field(default_factory=dict)


def build_measure_report(measure: str, alpha: Optional[int], rows: Iterable[Tuple[str, float]]) -> MeasureReport:
    """Sort rows by node and attach min / max / mean / zero_count."""
    rows = sorted((str(node), float(value)) for node, value in rows)
    for node, value in rows:
        if not math.isfinite(value):
            raise MsnValidationError(f"non-finite value {value!r} for node {node!r}")

    values = [value for _, value in rows]
    if values:
        summary = {
            "min": min(values),
            "max": max(values),
            "mean": math.fsum(values) / len(values),
            "zero_count": sum(1 for value in values if value == 0),
        }
    else:
        summary = {"min": None, "max": None, "mean": None, "zero_count": 0}
    return MeasureReport(measure, alpha, rows, summary)


class ReportWriter:
    _directories = set()

    @classmethod
    def create_directory(cls, path):
        directory = os.path.dirname(os.path.abspath(path))
        if directory not in cls._directories:
            os.makedirs(directory, exist_ok=True)
            cls._directories.add(directory)

    @staticmethod
    def format_number(value) -> str:
        if value is None:
            return ""
        if isinstance(value, int):
            return str(value)
        # positional decimal, never exponent notation
        return np.format_float_positional(
            float(value), precision=SIGNIFICANT_DIGITS, unique=True, fractional=False, trim="-"
        )

    @staticmethod
    def _json_number(value):
        if value is None or isinstance(value, int):
            return value
        # a float reparsed from the 12-digit text, so JSON and CSV agree
        return float(ReportWriter.format_number(value))

    @staticmethod
    def _csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        if header:
            writer.writerow(header)
        for row in rows:
            writer.writerow([cell if isinstance(cell, str) else ReportWriter.format_number(cell) for cell in row])
        return buffer.getvalue()

    @staticmethod
    def _json(data) -> str:
        return json.dumps(data, indent=2, ensure_ascii=False) + "\n"

    # ------------------------------------------------------------------
    #                           RENDERERS
    # ------------------------------------------------------------------

    @staticmethod
    def measure_csv(report: MeasureReport) -> str:
        return ReportWriter._csv(("node", "value"), report.rows)

    @staticmethod
    def measure_json(report: MeasureReport) -> str:
        number = ReportWriter._json_number
        data = {
            "measure": report.measure,
            "alpha": report.alpha,
            "rows": [{"node": node, "value": number(value)} for node, value in report.rows],
            "summary": {key: number(value) for key, value in report.summary.items()},
        }
        return ReportWriter._json(data)

    @staticmethod
    def nodeset_json(node: str, members: Iterable[str], alpha: Optional[int] = None,
                     variant: Optional[str] = None, layer: Optional[str] = None) -> str:
        data = {"node": node}
        if layer is not None:
            data["layer"] = layer
        else:
            data["variant"] = variant
            data["alpha"] = alpha
        data["members"] = sorted(members)
        return ReportWriter._json(data)

    @staticmethod
    def sweep_csv(rows) -> str:
        """alpha followed by the node counts with non-empty MN, non-zero CDC and non-zero CLCC."""
        return ReportWriter._csv(
            ("alpha", "mn_nonempty", "cdc_nonzero", "clcc_nonzero"),
            ((row.alpha, row.mn_nonempty, row.cdc_nonzero, row.clcc_nonzero) for row in rows),
        )

    @staticmethod
    def windows_csv(table) -> str:
        """A no-active row first, then one row per window combination."""
        header = ["combination"] + [f"alpha={alpha}" for alpha in table.alphas]
        rows = [["no_active", *table.no_active]]
        rows.extend([label, *counts] for label, counts in table.rows)
        return ReportWriter._csv(header, rows)

    @staticmethod
    def window_activity_csv(part, alphas: Sequence[int], active_counts: Sequence[Sequence[int]]) -> str:
        header = ["window", "start", "end", "events"] + [f"alpha={alpha}" for alpha in alphas]
        rows = [
            [f"W{i + 1}", start, end, part.event_counts[i], *(column[i] for column in active_counts)]
            for i, (start, end) in enumerate(part.windows)
        ]
        return ReportWriter._csv(header, rows)

    @staticmethod
    def histogram_csv(hist) -> str:
        return ReportWriter._csv(("range", "frequency", "cumulative_percent"), hist.rows())

    @staticmethod
    def histogram_json(hist) -> str:
        number = ReportWriter._json_number
        data = {
            "bin_upper_edges": [number(edge) for edge in hist.bin_upper_edges],
            "counts": list(hist.counts),
            "cumulative_percent": [number(value) for value in hist.cumulative_percent],
        }
        return ReportWriter._json(data)

    @staticmethod
    def fit_json(fit) -> str:
        number = ReportWriter._json_number
        data = {
            "A": number(fit.A),
            "t": number(fit.t),
            "correlation_rate": number(fit.correlation_rate),
            "n_points": fit.n_points,
            "excluded": fit.excluded,
            "method": fit.method,
        }
        return ReportWriter._json(data)

    @staticmethod
    def layers_csv(sizes: Dict[str, int]) -> str:
        return ReportWriter._csv(("layer", "relations"), sizes.items())

    # ------------------------------------------------------------------
    #                           FILE OUTPUT
    # ------------------------------------------------------------------

    @classmethod
    def write(cls, path, text: str) -> str:
        """Write a rendered report to `path` while holding `path`.lock."""
        cls.create_directory(path)
        with FileLock(f"{path}.lock"):
            with open(path, "w", encoding="utf-8", newline="") as file:
                file.write(text)
        logger.info("Report written to %s", path)
        return path
