"""Run records and their CSV / JSON / plot-data persistence.

Rationals are written as exact ``num/den`` text next to a 6-place decimal
column; floats use ``repr`` so they read back bit for bit.  Wall times are
not part of the persisted record (they would break byte-identical re-runs)
and go to a separate sidecar file instead.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Sequence, get_type_hints


@dataclass
class RunRecord:
    N: int
    theta: float
    lambda1: float
    lambda2: float
    delta: float
    preset1: str
    preset2: str
    seed: int
    h: int
    D: int
    Q: int
    J_exact: Fraction | None = None
    I_exact: Fraction | None = None
    J_over_Nh2: Fraction | None = None
    I_over_Nh2: Fraction | None = None
    J_diff: float | None = None
    I_diff: float | None = None
    J_envelope: float | None = None
    I_envelope: float | None = None
    spot_shifts: str = ""
    spot_failures: int = 0
    failure: str = ""
    version: str = ""
    timings: dict[str, float] = field(default_factory=dict, compare=False)


_PERSISTED = [f for f in dataclasses.fields(RunRecord) if f.name != "timings"]
_HINTS = get_type_hints(RunRecord)


def _kind(name: str) -> type:
    hint = str(_HINTS[name])
    for t in (Fraction, float, int, str):
        if t.__name__ in hint:
            return t
    raise TypeError(name)


def header() -> list[str]:
    cols = []
    for f in _PERSISTED:
        cols.append(f.name)
        if _kind(f.name) is Fraction:
            cols.append(f.name + "_decimal")
    return cols


def fraction_text(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def decimal_text(x: Fraction) -> str:
    """Six decimal places, rounded half-even from the exact value."""
    scaled = round(x * 10**6)
    sign = "-" if scaled < 0 else ""
    whole, part = divmod(abs(scaled), 10**6)
    return f"{sign}{whole}.{part:06d}"


def _flat(rec: RunRecord) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for f in _PERSISTED:
        v = getattr(rec, f.name)
        if _kind(f.name) is Fraction:
            out[f.name] = None if v is None else fraction_text(v)
            out[f.name + "_decimal"] = None if v is None else decimal_text(v)
        else:
            out[f.name] = v
    return out


def _csv_cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _parse_value(name: str, text: Any) -> Any:
    kind = _kind(name)
    if text is None or (text == "" and kind is not str):
        return None
    if kind is Fraction:
        return Fraction(text)
    if kind is float:
        return float(text)
    if kind is int:
        return int(text)
    return str(text)


def _from_flat(row: dict[str, Any]) -> RunRecord:
    return RunRecord(**{f.name: _parse_value(f.name, row.get(f.name)) for f in _PERSISTED})


def csv_text(records: Sequence[RunRecord]) -> str:
    if not records:
        raise ValueError("no records to write")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header())
    for rec in records:
        flat = _flat(rec)
        w.writerow([_csv_cell(flat[c]) for c in header()])
    return buf.getvalue()


def _write(path: str | Path, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def _read(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc}") from exc


def emit_csv(records: Sequence[RunRecord], path: str | Path) -> None:
    _write(path, csv_text(records))


def emit_json(records: Sequence[RunRecord], path: str | Path) -> None:
    if not records:
        raise ValueError("no records to write")
    _write(path, json.dumps([_flat(r) for r in records], indent=1) + "\n")


def parse_csv(path: str | Path) -> list[RunRecord]:
    return [_from_flat(row) for row in csv.DictReader(io.StringIO(_read(path)))]


def parse_json(path: str | Path) -> list[RunRecord]:
    return [_from_flat(row) for row in json.loads(_read(path))]


def load_records(path: str | Path) -> list[RunRecord]:
    return parse_json(path) if str(path).endswith(".json") else parse_csv(path)


def emit_timings(records: Iterable[RunRecord], path: str | Path) -> None:
    rows = [{"N": r.N, **r.timings} for r in records]
    _write(path, json.dumps(rows, indent=1) + "\n")


def field_value(rec: RunRecord | dict, name: str) -> Any:
    return rec[name] if isinstance(rec, dict) else getattr(rec, name)


def emit_plot_data(
    records: Sequence[RunRecord], x_field: str, y_field: str, path: str | Path
) -> None:
    """Two-column ``x,y`` CSV; rationals are written as decimals."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([x_field, y_field])
    for rec in records:
        x, y = field_value(rec, x_field), field_value(rec, y_field)
        if x is None or y is None:
            continue
        w.writerow([repr(float(x)), repr(float(y))])
    _write(path, buf.getvalue())
