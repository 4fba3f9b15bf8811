"""CSV artifacts: one schema comment line, a header row, then data rows."""

from __future__ import annotations

import io
import math
import sys
from dataclasses import dataclass

SCHEMA = "erglab-schema-v1"


def _fmt(v) -> str:
    if v is None or v == "":
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int) or (hasattr(v, "dtype") and v.dtype.kind in "iu"):
        return str(int(v))
    f = float(v)
    if math.isnan(f):
        return "nan"
    if math.isinf(f):
        return "inf" if f > 0 else "-inf"
    return repr(f)


def dumps(command: str, columns, rows) -> str:
    buf = io.StringIO()
    buf.write(f"# {SCHEMA} {command}\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        if len(row) != len(columns):
            raise ValueError("row width does not match the header")
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def write_csv(path, command: str, columns, rows) -> None:
    text = dumps(command, columns, rows)
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


@dataclass
class Table:
    command: str
    columns: list
    rows: list

    def column(self, name):
        i = self.columns.index(name)
        return [r[i] for r in self.rows]


def _parse(cell: str):
    if cell == "":
        return None
    if cell in ("true", "false"):
        return cell == "true"
    try:
        return int(cell)
    except ValueError:
        return float(cell)


def loads(text: str) -> Table:
    lines = text.splitlines()
    if not lines or not lines[0].startswith(f"# {SCHEMA} "):
        raise ValueError("missing schema line")
    command = lines[0].split()[2]
    columns = lines[1].split(",")
    rows = [[_parse(c) for c in line.split(",")] for line in lines[2:] if line]
    return Table(command, columns, rows)


def read_csv(path) -> Table:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
