"""Deterministic CSV/JSON report writing and schema validation."""

from __future__ import annotations

import csv
import io
import json
import math
from datetime import datetime, timezone
from importlib import resources
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from . import __version__

SCHEMA_VERSION = 1
TOOL = "meritfactor"


def jsonable(value: Any) -> Any:
    """Convert numpy scalars/arrays and non-finite floats to JSON-safe values.

    Infinite merit factors become the string ``"inf"``.
    """
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    return value


def build_report(command: str, params: dict, records: Sequence[dict],
                 seed: Optional[int] = None, summary: Optional[dict] = None) -> dict:
    report = {
        "meta": {
            "tool": TOOL,
            "version": __version__,
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "params": params,
            "seed": seed,
        },
        "records": list(records),
    }
    if summary is not None:
        report["summary"] = summary
    return jsonable(report)


def dumps_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    if isinstance(value, float):
        return repr(value)
    return str(value)


def dumps_csv(report: dict, columns: Optional[Iterable[str]] = None,
              timestamp: Optional[str] = None) -> str:
    """CSV body preceded by a ``# generated`` line and a ``# meta`` line.

    Only the first line carries a timestamp, so bodies are byte-comparable.
    """
    if timestamp is None:
        timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    records = report["records"]
    if columns is None:
        columns = []
        for rec in records:
            for k in rec:
                if k not in columns:
                    columns.append(k)
    columns = list(columns)
    buf = io.StringIO()
    buf.write(f"# generated {timestamp}\n")
    meta = dict(report["meta"])
    if "summary" in report:
        meta["summary"] = report["summary"]
    buf.write("# meta " + json.dumps(meta, sort_keys=True, separators=(",", ":")) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for rec in records:
        writer.writerow([_cell(rec.get(c)) for c in columns])
    return buf.getvalue()


def load_schema() -> dict:
    text = resources.files("meritfactor").joinpath("schemas/report.schema.json").read_text()
    return json.loads(text)


def validate_report(report: dict) -> None:
    """Raise ``jsonschema.ValidationError`` if the report does not match the shipped schema."""
    import jsonschema

    jsonschema.validate(report, load_schema())
