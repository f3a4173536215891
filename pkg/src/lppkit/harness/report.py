"""Validation reports and deterministic JSON / CSV rendering."""
from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .. import __version__


@dataclass(frozen=True)
class CheckRow:
    name: str
    oracle: float
    value: float
    error: float
    tolerance: float
    runtime: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return bool(self.error <= self.tolerance)

    def as_dict(self, timings: bool = False) -> dict:
        d = asdict(self)
        if not timings:
            d.pop("runtime")
        d["passed"] = self.passed
        return d


def check(name: str, oracle, value, tolerance: float, error=None, t0: float | None = None) -> CheckRow:
    """Row comparing ``value`` with ``oracle``; error defaults to their absolute difference."""
    oracle, value = float(oracle), float(value)
    err = abs(value - oracle) if error is None else float(error)
    runtime = 0.0 if t0 is None else time.perf_counter() - t0
    return CheckRow(name, oracle, value, err, float(tolerance), runtime)


@dataclass
class ValidationReport:
    """Rows of one suite; the suite passes when at least ``required_fraction`` rows pass."""
    suite: str
    rows: list = field(default_factory=list)
    required_fraction: float = 1.0

    @property
    def pass_fraction(self) -> float:
        return sum(r.passed for r in self.rows) / len(self.rows) if self.rows else 0.0

    @property
    def passed(self) -> bool:
        return bool(self.rows) and self.pass_fraction >= self.required_fraction

    def failures(self) -> list:
        return [r for r in self.rows if not r.passed]

    def body(self, timings: bool = False) -> dict:
        return {"suite": self.suite, "passed": self.passed,
                "pass_fraction": self.pass_fraction,
                "required_fraction": self.required_fraction,
                "rows": [r.as_dict(timings) for r in self.rows]}


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if hasattr(o, "item"):
        return o.item()
    if isinstance(o, tuple):
        return list(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


# where and how fast a run executes never changes its results
EXECUTION_ONLY = {"workers", "out"}


def document(config, body: dict) -> dict:
    """Output record carrying the library version and the fully resolved config."""
    return {"lppkit_version": __version__,
            "config": config.model_dump(mode="json", exclude=EXECUTION_ONLY), **body}


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, default=_default) + "\n"


def render_csv(doc: dict, rows_key: str = "rows") -> str:
    """Rows as CSV; every other field of ``doc`` goes into '#' header lines."""
    buf = io.StringIO()
    for k, v in doc.items():
        if k != rows_key:
            buf.write(f"# {k}: {json.dumps(v, default=_default, sort_keys=True)}\n")
    rows = doc.get(rows_key) or []
    if rows:
        keys = list(rows[0])
        for r in rows[1:]:
            keys += [k for k in r if k not in keys]
        w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(v, default=_default) if isinstance(v, (list, dict)) else v
                        for k, v in r.items()})
    return buf.getvalue()
