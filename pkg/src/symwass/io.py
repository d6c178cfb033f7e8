"""CSV point clouds and result documents.

Reals are written with 17 significant digits, enough to round-trip any
binary64 value exactly.
"""

from __future__ import annotations

import csv
import io as _io
import json
import math
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, TextIO

import numpy as np

SCHEMA_VERSION = "1"


class CloudFormatError(ValueError):
    pass


def fmt_real(x: float) -> str:
    return format(float(x), ".17g")


def parse_cloud(text: str, has_header: bool = False) -> np.ndarray:
    rows: list[list[float]] = []
    width = None
    reader = csv.reader(_io.StringIO(text, newline=""))
    for lineno, row in enumerate(reader, start=1):
        if has_header and lineno == 1:
            continue
        if not row or all(not cell.strip() for cell in row):
            continue
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise CloudFormatError(f"line {lineno}: expected {width} columns, found {len(row)}")
        vals = []
        for col, cell in enumerate(row, start=1):
            try:
                v = float(cell)
            except ValueError:
                raise CloudFormatError(f"line {lineno}, column {col}: non-numeric cell {cell.strip()!r}") from None
            if not math.isfinite(v):
                raise CloudFormatError(f"line {lineno}, column {col}: non-finite coordinate")
            vals.append(v)
        rows.append(vals)
    if not rows:
        raise CloudFormatError("empty input")
    return np.array(rows, dtype=np.float64)


def read_cloud(path, has_header: bool = False) -> np.ndarray:
    p = Path(path)
    if not p.is_file():
        raise CloudFormatError(f"{path}: no such file")
    with open(p, encoding="utf-8", newline="") as fh:
        return parse_cloud(fh.read(), has_header)


def format_cloud(X) -> str:
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    return "".join(",".join(fmt_real(v) for v in row) + "\n" for row in X)


def write_cloud(X, path="-") -> None:
    _emit(format_cloud(X), path)


@dataclass
class ResultDocument:
    command: str
    config: dict
    results: dict
    schema_version: str = SCHEMA_VERSION
    timestamps: Optional[dict] = None

    @property
    def seed(self):
        return self.config.get("seed")

    def to_dict(self) -> dict:
        out: dict[str, Any] = {
            "schema_version": self.schema_version,
            "command": self.command,
            "seed": self.seed,
            "config": self.config,
            "results": self.results,
        }
        if self.timestamps:
            out["timestamps"] = self.timestamps
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "ResultDocument":
        return cls(
            command=d["command"],
            config=d["config"],
            results=d["results"],
            schema_version=d.get("schema_version", SCHEMA_VERSION),
            timestamps=d.get("timestamps"),
        )


_FLOAT_TAG = "\x00f17:"
_FLOAT_RE = re.compile(r'"\\u0000f17:([^"]*)"')


def _tag_floats(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, (float, np.floating)):
        return _FLOAT_TAG + fmt_real(obj) if math.isfinite(obj) else None
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, dict):
        return {str(k): _tag_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_tag_floats(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_json(doc: ResultDocument) -> str:
    text = json.dumps(_tag_floats(doc.to_dict()), indent=2)
    return _FLOAT_RE.sub(lambda m: _json_number(m.group(1)), text) + "\n"


def _json_number(s: str) -> str:
    # JSON numbers need a fraction or exponent to read back as floats
    return s if any(c in s for c in ".eE") else s + ".0"


def to_csv(doc: ResultDocument) -> str:
    """``key,value`` lines for flat numerics; a headed table for ``rows``."""
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    rows = doc.results.get("rows")
    if isinstance(rows, list) and rows:
        header = list(rows[0].keys())
        w.writerow(header)
        for r in rows:
            w.writerow([_csv_cell(r.get(k)) for k in header])
        return buf.getvalue()
    for key, val in doc.results.items():
        if isinstance(val, (bool, np.bool_)):
            continue
        if isinstance(val, (int, float, np.integer, np.floating)):
            w.writerow([key, _csv_cell(val)])
    if doc.seed is not None:
        w.writerow(["seed", doc.seed])
    return buf.getvalue()


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (float, np.floating)):
        return fmt_real(v)
    return str(v)


def write_result(doc: ResultDocument, fmt: str = "json", path="-") -> None:
    if fmt == "json":
        text = to_json(doc)
    elif fmt == "csv":
        text = to_csv(doc)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    _emit(text, path)


def parse_result(text: str) -> ResultDocument:
    return ResultDocument.from_dict(json.loads(text))


def read_result(path) -> ResultDocument:
    return parse_result(Path(path).read_text(encoding="utf-8"))


def _emit(text: str, path) -> None:
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc
