"""Serialise experiment reports for stdout."""

import csv
import io
import logging

from quantum_fragments.exceptions import InvalidParameterError
from quantum_fragments.models.experiment import Report

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["name", "analytic", "computed", "tolerance", "comparison", "passed"]


def _cell(value: object) -> object:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    return value


def emit(report: Report, fmt: str = "json") -> str:
    """Render a report as a JSON object or as CSV with a header row."""
    logger.debug(f"Rendering {len(report.rows)} rows of {report.experiment} as {fmt}")
    if fmt == "json":
        return report.model_dump_json(indent=2)
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in report.rows:
            data = row.model_dump(mode="json")
            writer.writerow({key: _cell(data[key]) for key in CSV_COLUMNS})
        return buffer.getvalue()
    raise InvalidParameterError(f"Unknown report format '{fmt}'")
