"""
CSV residual tables.
"""

import csv
import io
from pathlib import Path
from typing import List, Union

from bochner_lab.domain.checks.schemas.report import ResolutionRow, VerificationReport
from bochner_lab.infrastructure.reporting.json_writer import format_float


def _rows(report: VerificationReport) -> List[ResolutionRow]:
    if report.table:
        return report.table
    if not report.residuals:
        return []
    resolution = report.resolutions[0] if report.resolutions else 0
    return [
        ResolutionRow(
            resolution=resolution,
            spacing=float("nan"),
            residuals=report.residuals,
            verdict=report.verdict,
        )
    ]


def _cell(value: float) -> str:
    return format_float(value).strip('"')


def residual_table(report: VerificationReport) -> str:
    """One row per resolution: resolution, spacing, every residual, verdict."""
    rows = _rows(report)
    names = sorted({name for row in rows for name in row.residuals})
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["resolution", "spacing", *names, "verdict"])
    for row in rows:
        cells = [_cell(row.residuals[name]) if name in row.residuals else "" for name in names]
        writer.writerow([row.resolution, _cell(row.spacing), *cells, row.verdict])
    return buffer.getvalue()


def write_csv(report: VerificationReport, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(residual_table(report), encoding="utf-8")
    return path
