"""Tabular and JSON reports shared by the command-line tools.

JSON layout (``REPORT_SCHEMA``)::

    {"schema": "qbio-report/1", "version": "...", "command": "bounds folding",
     "params": {"N": "100", ...}, "results": {"T_max": "0.000277...", ...},
     "notes": [...]}

Floating-point results are written as decimal strings produced by ``repr``
so they round-trip exactly; integers and booleans stay native JSON values.
Parameters are echoed as the strings they were given in.
"""

from __future__ import annotations

import csv
import io
import json
import math
from numbers import Integral
from dataclasses import dataclass, field

import numpy as np

from . import __version__

SCHEMA_ID = "qbio-report/1"

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema", "version", "command", "params", "results"],
    "additionalProperties": False,
    "properties": {
        "schema": {"const": SCHEMA_ID},
        "version": {"type": "string"},
        "command": {"type": "string"},
        "params": {"type": "object", "additionalProperties": {"type": "string"}},
        "results": {
            "type": "object",
            "additionalProperties": {
                "oneOf": [
                    {"type": "string"},
                    {"type": "integer"},
                    {"type": "boolean"},
                    {"type": "array", "items": {"type": ["string", "integer", "boolean"]}},
                ]
            },
        },
        "notes": {"type": "array", "items": {"type": "string"}},
    },
}


@dataclass
class Row:
    name: str
    value: object
    unit: str = ""
    formula: str = ""
    tag: str = ""


@dataclass
class Report:
    command: str
    params: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def add(self, name, value, unit="", formula="", tag=""):
        self.rows.append(Row(name, value, unit, formula, tag))
        return self

    def note(self, text: str):
        self.notes.append(text)
        return self

    def value(self, name):
        for r in self.rows:
            if r.name == name:
                return r.value
        raise KeyError(name)

    # rendering ------------------------------------------------------------
    def to_table(self) -> str:
        head = ("quantity", "value", "unit", "formula", "tag")
        body = [(r.name, fmt_value(r.value), r.unit, r.formula, r.tag) for r in self.rows]
        widths = [max(len(str(x)) for x in col) for col in zip(head, *body)]
        lines = [f"# qbio {__version__}: {self.command}"]
        if self.params:
            lines.append("# " + " ".join(f"{k}={v}" for k, v in self.params.items()))
        for row in (head, *body):
            lines.append("  ".join(str(x).ljust(w) for x, w in zip(row, widths)).rstrip())
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        for line in header_lines(self.command, self.params):
            buf.write(f"# {line}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["quantity", "value", "unit", "formula", "tag"])
        for r in self.rows:
            w.writerow([r.name, csv_value(r.value), r.unit, r.formula, r.tag])
        return buf.getvalue()

    def to_dict(self) -> dict:
        out = {
            "schema": SCHEMA_ID,
            "version": __version__,
            "command": self.command,
            "params": {k: str(v) for k, v in self.params.items()},
            "results": {r.name: json_value(r.value) for r in self.rows},
        }
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        return self.to_table()


def header_lines(command: str, params: dict) -> list[str]:
    return [f"qbio {__version__}", f"command: {command}"] + [f"{k} = {v}" for k, v in params.items()]


def fmt_value(v) -> str:
    if isinstance(v, np.generic):
        v = v.item()
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return f"{v:.6g}" if math.isfinite(v) else str(v)
    if isinstance(v, (list, tuple)):
        return ",".join(fmt_value(x) for x in v)
    return str(v)


def csv_value(v) -> str:
    if isinstance(v, np.generic):
        v = v.item()
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return f"{v:.8e}"
    if isinstance(v, (list, tuple)):
        return ";".join(csv_value(x) for x in v)
    return str(v)


def json_value(v):
    if isinstance(v, np.generic):
        v = v.item()
    if isinstance(v, bool):
        return v
    if isinstance(v, Integral):
        return int(v)
    if isinstance(v, float):
        return repr(float(v))
    if isinstance(v, (list, tuple)):
        return [json_value(x) for x in v]
    return str(v)
