"""Reading and writing signal files.

CSV: one value per line, either a real decimal or ``re,im``; no header.
JSON: ``{"values": [...]}`` (or a bare list) whose items are numbers or
``[re, im]`` pairs. Written files always use ``repr`` formatting, which
round-trips doubles exactly.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import DFRHTError

__all__ = ["SignalFormatError", "format_complex", "read_signal", "write_matrix", "write_signal"]


class SignalFormatError(DFRHTError):
    """Unreadable or malformed signal file."""


def _number(text, where):
    try:
        value = float(text)
    except ValueError:
        raise SignalFormatError(f"{where}: cannot parse {text!r} as a decimal") from None
    if not math.isfinite(value):
        raise SignalFormatError(f"{where}: non-finite value {text!r}")
    return value


def _parse_csv(text, name):
    values, is_complex = [], False
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        cells = line.split(",")
        where = f"{name}:{lineno}"
        if len(cells) == 1:
            values.append(complex(_number(cells[0], where), 0.0))
        elif len(cells) == 2:
            values.append(complex(_number(cells[0], where), _number(cells[1], where)))
            is_complex = True
        else:
            raise SignalFormatError(f"{where}: expected 1 or 2 values, got {len(cells)}")
    return values, is_complex


def _parse_json(text, name):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SignalFormatError(f"{name}: invalid JSON ({exc})") from None
    items = doc.get("values") if isinstance(doc, dict) else doc
    if not isinstance(items, list):
        raise SignalFormatError(f"{name}: expected a list of values")
    values, is_complex = [], False
    for i, item in enumerate(items):
        where = f"{name}[{i}]"
        if isinstance(item, list) and len(item) == 2:
            values.append(complex(_number(item[0], where), _number(item[1], where)))
            is_complex = True
        elif isinstance(item, (int, float)) and not isinstance(item, bool):
            values.append(complex(_number(item, where), 0.0))
        else:
            raise SignalFormatError(f"{where}: expected a number or [re, im]")
    return values, is_complex


def read_signal(path, fmt: str | None = None) -> np.ndarray:
    """Load a signal; returns float64 when every value is real, else complex128.

    ``fmt`` defaults to ``json`` for ``*.json`` files and ``csv`` otherwise.
    The length must be a power of two, at least 2.
    """
    path = Path(path)
    fmt = fmt or ("json" if path.suffix.lower() == ".json" else "csv")
    try:
        text = path.read_text()
    except OSError as exc:
        raise SignalFormatError(f"cannot read {path}: {exc.strerror}") from None
    parse = _parse_json if fmt == "json" else _parse_csv
    values, is_complex = parse(text, path.name)
    size = len(values)
    if size < 2 or size & (size - 1):
        raise SignalFormatError(f"{path.name}: length {size} is not a power of two >= 2")
    arr = np.array(values, dtype=np.complex128)
    return arr if is_complex else arr.real.copy()


def format_complex(z) -> str:
    return f"{float(z.real)!r},{float(z.imag)!r}"


def write_signal(path, y, fmt: str = "csv", meta: dict | None = None) -> None:
    y = np.asarray(y, dtype=np.complex128)
    path = Path(path)
    if fmt == "json":
        doc = dict(meta or {})
        doc["values"] = [[float(z.real), float(z.imag)] for z in y]
        path.write_text(json.dumps(doc) + "\n")
    else:
        path.write_text("".join(format_complex(z) + "\n" for z in y))


def write_matrix(path, m, fmt: str = "csv", meta: dict | None = None) -> None:
    """JSON: ``{..meta, "rows": [[[re, im], ...], ...]}``; CSV: one row per line as ``re,im,re,im,...``."""
    m = np.asarray(m, dtype=np.complex128)
    path = Path(path)
    if fmt == "json":
        doc = dict(meta or {})
        doc["rows"] = [[[float(z.real), float(z.imag)] for z in row] for row in m]
        path.write_text(json.dumps(doc) + "\n")
    else:
        with path.open("w") as f:
            for row in m:
                f.write(",".join(format_complex(z) for z in row) + "\n")
