"""Edge-list, matrix and report file formats.

Rationals are written as ``p/q`` (integers as ``p``).  With ``decimal=True``
they are written as exact decimals, which is refused for denominators with a
prime factor other than 2 or 5.
"""

from __future__ import annotations

import csv
import io
import json
import os
import re
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Any

from .graph import WeightedGraph, edge_key

VERTEX_HEADER = "#vertices:"


class FormatError(ValueError):
    def __init__(self, message: str, path=None, line: int | None = None, column: int | None = None):
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
            if column is not None:
                where += f"{column}:"
        super().__init__(f"{where} {message}" if where else message)
        self.line = line
        self.column = column


def format_rational(x: Fraction, decimal: bool = False) -> str:
    if not decimal:
        return str(x)
    q = x.denominator
    twos = fives = 0
    while q % 2 == 0:
        q //= 2
        twos += 1
    while q % 5 == 0:
        q //= 5
        fives += 1
    if q != 1:
        raise ValueError(f"{x} has no finite decimal expansion")
    places = max(twos, fives)
    scaled = x * 10**places
    assert scaled.denominator == 1
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled.numerator)).rjust(places + 1, "0")
    if places == 0:
        return sign + digits
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


_RATIONAL = re.compile(r"^[+-]?(\d+(/\d+)?|\d*\.\d+|\d+\.\d*)$")


def parse_rational(text: str, path=None, line=None, column=None) -> Fraction:
    text = text.strip()
    if not _RATIONAL.match(text):
        raise FormatError(f"not a rational number: {text!r}", path, line, column)
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise FormatError(f"zero denominator in {text!r}", path, line, column) from None


def split_labels(text: str) -> list[str]:
    """Split on commas that are not inside ``{...}`` (Kneser labels)."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur).strip())
    return [s for s in out if s]


def atomic_write(path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------- graphs


def graph_to_json(g: WeightedGraph, decimal: bool = False) -> dict[str, Any]:
    return {
        "labels": list(g.labels),
        "edges": [
            {"a": g.labels[a], "b": g.labels[b], "w": format_rational(w, decimal)}
            for (a, b), w in g.weights.items()
        ],
    }


def graph_from_json(obj, path=None) -> WeightedGraph:
    try:
        labels = obj["labels"]
        edges = obj["edges"]
    except (KeyError, TypeError):
        raise FormatError("graph JSON needs 'labels' and 'edges'", path) from None
    index = {lab: i for i, lab in enumerate(labels)}
    weights = {}
    for n, e in enumerate(edges):
        try:
            a, b, w = index[e["a"]], index[e["b"]], e["w"]
        except KeyError as exc:
            raise FormatError(f"edge #{n}: unknown label or missing field {exc}", path) from None
        key = edge_key(a, b)
        if key in weights:
            raise FormatError(f"edge #{n}: duplicate edge {e['a']}-{e['b']}", path)
        weights[key] = parse_rational(str(w), path) if not isinstance(w, int) else Fraction(w)
    try:
        return WeightedGraph(tuple(labels), weights)
    except ValueError as exc:
        raise FormatError(str(exc), path) from None


def graph_to_edgelist(g: WeightedGraph, decimal: bool = False) -> str:
    lines = [f"{VERTEX_HEADER} {','.join(g.labels)}"]
    for (a, b), w in g.weights.items():
        lines.append(f"{g.labels[a]}\t{g.labels[b]}\t{format_rational(w, decimal)}")
    return "\n".join(lines) + "\n"


def graph_from_edgelist(text: str, path=None) -> WeightedGraph:
    labels = None
    weights = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            continue
        if line.startswith(VERTEX_HEADER):
            if labels is not None:
                raise FormatError("second vertex header", path, lineno, 1)
            labels = split_labels(line[len(VERTEX_HEADER):])
            index = {lab: i for i, lab in enumerate(labels)}
            continue
        if line.startswith("#"):
            continue
        if labels is None:
            raise FormatError(f"missing '{VERTEX_HEADER}' header before edges", path, lineno, 1)
        fields = line.split("\t")
        if len(fields) != 3:
            raise FormatError(f"expected 3 tab-separated fields, got {len(fields)}", path, lineno, 1)
        col_b = len(fields[0]) + 2
        col_w = col_b + len(fields[1]) + 1
        for fld, col in ((fields[0], 1), (fields[1], col_b)):
            if fld.strip() not in index:
                raise FormatError(f"unknown vertex label {fld!r}", path, lineno, col)
        a, b = index[fields[0].strip()], index[fields[1].strip()]
        w = parse_rational(fields[2], path, lineno, col_w)
        if a == b:
            raise FormatError("loop edge", path, lineno, 1)
        key = edge_key(a, b)
        if key in weights:
            raise FormatError("duplicate edge", path, lineno, 1)
        if w <= 0:
            raise FormatError(f"non-positive weight {w}", path, lineno, col_w)
        weights[key] = w
    if labels is None:
        raise FormatError(f"missing '{VERTEX_HEADER}' header", path, 1, 1)
    try:
        return WeightedGraph(tuple(labels), weights)
    except ValueError as exc:
        raise FormatError(str(exc), path) from None


def read_graph(path) -> WeightedGraph:
    text = Path(path).read_text()
    if str(path).endswith(".json"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(exc.msg, path, exc.lineno, exc.colno) from None
        return graph_from_json(obj, path)
    return graph_from_edgelist(text, path)


def dump_graph(g: WeightedGraph, path=None, decimal: bool = False) -> str:
    if path is not None and str(path).endswith(".json"):
        return json.dumps(graph_to_json(g, decimal), indent=2) + "\n"
    return graph_to_edgelist(g, decimal)


def write_graph(path, g: WeightedGraph, decimal: bool = False) -> None:
    atomic_write(path, dump_graph(g, path, decimal))


# ---------------------------------------------------------------- matrices


def matrix_to_csv(d, decimal: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(d.labels)
    for row in d.entries:
        w.writerow([format_rational(x, decimal) for x in row])
    return buf.getvalue()


def matrix_from_csv(text: str, path=None):
    from .metric import DistanceMatrix

    rows = list(csv.reader(io.StringIO(text)))
    rows = [r for r in rows if r]
    if not rows:
        raise FormatError("empty matrix file", path, 1, 1)
    labels = [s.strip() for s in rows[0]]
    m = len(labels)
    if len(rows) - 1 != m:
        raise FormatError(f"{m} labels but {len(rows) - 1} rows", path, len(rows), 1)
    entries = []
    for r, row in enumerate(rows[1:], start=2):
        if len(row) != m:
            raise FormatError(f"row has {len(row)} entries, expected {m}", path, r, 1)
        entries.append([parse_rational(x, path, r, c) for c, x in enumerate(row, start=1)])
    try:
        return DistanceMatrix(tuple(labels), entries)
    except ValueError as exc:
        raise FormatError(str(exc), path) from None


def matrix_to_json(d, decimal: bool = False) -> dict[str, Any]:
    return {"labels": list(d.labels), "rows": [[format_rational(x, decimal) for x in row] for row in d.entries]}


def matrix_from_json(obj, path=None):
    from .metric import DistanceMatrix

    try:
        labels, rows = obj["labels"], obj["rows"]
    except (KeyError, TypeError):
        raise FormatError("matrix JSON needs 'labels' and 'rows'", path) from None
    entries = [
        [parse_rational(str(x), path, r, c) for c, x in enumerate(row, start=1)]
        for r, row in enumerate(rows, start=1)
    ]
    try:
        return DistanceMatrix(tuple(labels), entries)
    except ValueError as exc:
        raise FormatError(str(exc), path) from None


def read_matrix(path):
    text = Path(path).read_text()
    if str(path).endswith(".json"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(exc.msg, path, exc.lineno, exc.colno) from None
        return matrix_from_json(obj, path)
    return matrix_from_csv(text, path)


def dump_matrix(d, path=None, decimal: bool = False) -> str:
    if path is not None and str(path).endswith(".json"):
        return json.dumps(matrix_to_json(d, decimal), indent=2) + "\n"
    return matrix_to_csv(d, decimal)


def write_matrix(path, d, decimal: bool = False) -> None:
    atomic_write(path, dump_matrix(d, path, decimal))


# ---------------------------------------------------------------- reports


def _jsonable(x, decimal=False):
    if isinstance(x, Fraction):
        return format_rational(x, decimal)
    if isinstance(x, dict):
        return {str(k): _jsonable(v, decimal) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v, decimal) for v in x]
    return x


def verdict_to_json(verdict, decimal: bool = False) -> dict[str, Any]:
    labels = verdict.realization.labels if verdict.realization is not None else None
    conditions = []
    for c in verdict.conditions:
        entry = {
            "id": c.condition_id,
            "holds": c.holds,
            "skipped": c.skipped,
            "violations": c.violations,
            "witnesses": [
                {"kind": w.kind, "labels": list(w.labels), "values": _jsonable(w.values), "note": w.note}
                for w in c.witnesses
            ],
        }
        if c.note:
            entry["note"] = c.note
        conditions.append(entry)
    out = {
        "family": str(verdict.family),
        "mode": verdict.mode,
        "realizable": verdict.realizable,
        "partial": verdict.partial,
        "conditions": conditions,
        "notes": list(verdict.notes),
    }
    frame = verdict.frame
    if frame is not None and labels is not None:
        out["frame"] = {
            "outer": [labels[v] for v in frame.outer],
            "hats": {labels[v]: labels[h] for v, h in frame.hats.items()},
            "inner_shift": frame.inner_shift,
        }
    if verdict.realization is not None:
        out["realization"] = graph_to_json(verdict.realization, decimal)
    return out


def fuzz_report_to_json(report) -> dict[str, Any]:
    return {
        "family": report.family,
        "seed": report.seed,
        "trials": report.trials,
        "passes": report.passes,
        "failures": _jsonable(report.failures),
        "seconds": round(report.seconds, 3),
    }


def write_json(path, obj) -> None:
    atomic_write(path, json.dumps(obj, indent=2) + "\n")
