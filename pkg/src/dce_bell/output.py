"""Deterministic CSV/JSON table writers."""

import json
import math
import sys
from contextlib import contextmanager

SIG_DIGITS = 12


def format_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, f".{SIG_DIGITS}g")
    if isinstance(value, (frozenset, set)):
        return ";".join(sorted(value))
    if value is None:
        return ""
    return str(value)


def _jsonable(value):
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"refusing to write non-finite value {value!r}")
        return float(format(value, f".{SIG_DIGITS}g"))
    if isinstance(value, (frozenset, set)):
        return sorted(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return float(value)  # numpy scalars


def render_csv(rows, columns) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(format_cell(row[c]) for c in columns))
    return "\n".join(lines) + "\n"


def render_json(rows, columns, meta) -> str:
    doc = {"meta": _jsonable(meta), "rows": [{c: _jsonable(row[c]) for c in columns} for row in rows]}
    return json.dumps(doc, indent=2) + "\n"


@contextmanager
def _open_destination(destination):
    if destination in (None, "-"):
        yield sys.stdout
    else:
        with open(destination, "w", encoding="utf-8", newline="") as fh:
            yield fh


def write_table(rows, columns, fmt="csv", destination=None, meta=None):
    """Write ``rows`` (dicts keyed by ``columns``) as CSV or JSON.

    CSV: one header line, floats to 12 significant digits, ``\\n`` line
    endings. JSON: ``{"meta": ..., "rows": [...]}``. ``destination`` is a
    path, or ``None``/``"-"`` for standard output.
    """
    if fmt == "csv":
        text = render_csv(rows, columns)
    elif fmt == "json":
        text = render_json(rows, columns, meta or {})
    else:
        raise ValueError(f"unknown format {fmt!r}")
    with _open_destination(destination) as fh:
        fh.write(text)


def write_text(text: str, destination=None):
    with _open_destination(destination) as fh:
        fh.write(text)

