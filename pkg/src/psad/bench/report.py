"""Quartile summaries and the table, CSV and JSON renderings."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .harness import BenchRecord

__all__ = ["FORMATS", "KAPPA_FAMILIES", "QuartileSummary", "emit", "quartiles",
           "render", "summarize", "summarize_all"]

FORMATS = ("table", "csv", "json")
KAPPA_FAMILIES = ("kappa1", "kappa2_dir", "kappa2_sub",
                  "ops_kappa1", "ops_kappa2_dir", "ops_kappa2_sub")
STATS = ("min", "q1", "q2", "q3", "max")


@dataclass(frozen=True)
class QuartileSummary:
    min: float
    q1: float
    q2: float
    q3: float
    max: float

    def as_tuple(self):
        return (self.min, self.q1, self.q2, self.q3, self.max)

    def to_dict(self):
        return asdict(self)


def quartiles(values):
    """Five-number summary with linearly interpolated (inclusive) quartiles."""
    values = np.asarray(list(values), dtype=float)
    if values.size == 0:
        raise ValueError("cannot summarize an empty set of values")
    q = np.quantile(values, [0.0, 0.25, 0.5, 0.75, 1.0], method="linear")
    return QuartileSummary(*(float(v) for v in q))


def summarize(records, family="kappa1"):
    """Quartiles of one kappa family over ``records``; missing values skipped."""
    if family not in KAPPA_FAMILIES:
        raise ValueError(f"unknown kappa family {family!r}")
    values = [getattr(r, family) for r in records]
    values = [v for v in values if v is not None]
    if not values:
        raise ValueError(f"no {family} values to summarize")
    return quartiles(values)


def summarize_all(records):
    out = {}
    for family in KAPPA_FAMILIES:
        if any(getattr(r, family) is not None for r in records):
            out[family] = summarize(records, family)
    return out


def _fmt(value, width=9):
    if value is None:
        return "-".rjust(width)
    if isinstance(value, float):
        return f"{value:{width}.2f}"
    return f"{value:>{width}}"


def _table(records, summaries):
    timed = any(r.kappa1 is not None for r in records)
    prefix = "" if timed else "ops_"
    kappas = [prefix + k for k in ("kappa1", "kappa2_dir", "kappa2_sub")]
    head = ["problem".ljust(22), *(h.rjust(6) for h in ("n", "rho", "p_J", "p_Hd", "p_Hs")),
            *(k.rjust(15) for k in kappas)]
    lines = [" ".join(head)]
    for r in records:
        lines.append(" ".join([
            r.problem.ljust(22), *(f"{v:6d}" for v in (r.n, r.rho_max, r.p_jac,
                                                       r.p_hess_dir, r.p_hess_sub)),
            *(_fmt(getattr(r, k), 15) for k in kappas)]))
    if summaries:
        lines.append("")
        lines.append(" ".join(["".ljust(15), *(s.rjust(9) for s in STATS)]))
        for family, s in summaries.items():
            lines.append(" ".join([family.ljust(15), *(_fmt(v) for v in s.as_tuple())]))
    return "\n".join(lines) + "\n"


def _csv(records):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    columns = BenchRecord.columns()
    writer.writerow(columns)
    for r in records:
        writer.writerow(["" if v is None else repr(v) if isinstance(v, float) else v
                         for v in (getattr(r, c) for c in columns)])
    return buf.getvalue()


def _json(records, summaries, environment, errors=None):
    doc = {
        "records": [r.to_dict() for r in records],
        "summaries": {k: s.to_dict() for k, s in summaries.items()},
        "environment": environment,
    }
    if errors:
        doc["errors"] = list(errors)
    return json.dumps(doc, indent=2) + "\n"


def render(records, summaries, fmt="table", environment=None, errors=None):
    if fmt == "table":
        return _table(records, summaries)
    if fmt == "csv":
        return _csv(records)
    if fmt == "json":
        return _json(records, summaries, environment or {}, errors)
    raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")


def emit(records, summaries, fmt="table", out=None, environment=None, errors=None,
         stream=None):
    """Write the report to ``out`` (a path) or to ``stream``.

    Raises :class:`OSError` when the path cannot be written.
    """
    text = render(records, summaries, fmt, environment, errors)
    if out is None:
        if stream is None:
            import sys
            stream = sys.stdout
        stream.write(text)
    else:
        Path(out).write_text(text)
    return text


def load_records(text):
    """Records back from a JSON report."""
    return [BenchRecord.from_dict(d) for d in json.loads(text)["records"]]
