"""Check records, the discrepancy log and the JSON report.

Report schema (one JSON object, keys in this order)::

    version        package version string
    command        argv echo, list of strings
    seed           the seed used, or null
    checks         list of records, in the order the checks ran:
                     name, anchor, tested, max_residual, tolerance, pass, detail
    discrepancies  list of published-vs-derived differences:
                     check, entry, derived, printed, count, note
    pass           true iff every check passed

``max_residual`` and ``tolerance`` are decimal strings (``repr`` of the float)
or ``"p/q"`` for exact results.  There is no timestamp, so the same command
and seed give byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

__all__ = ["CheckRecord", "Discrepancy", "DiscrepancyLog", "Report", "encode"]


def encode(value):
    """JSON-ready form: floats as decimal strings, rationals as ``"p/q"``."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, np.ndarray):
        return encode(value.tolist())
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    return str(value)


@dataclass
class CheckRecord:
    name: str
    anchor: str  # the relation being checked, as a formula
    tested: int
    max_residual: object
    tolerance: object
    passed: bool
    detail: dict = field(default_factory=dict)

    @classmethod
    def of(cls, name, anchor, residuals, tolerance, detail=None, passed=None):
        """Record from a list of residuals; passes when every one is within tolerance."""
        residuals = list(residuals)
        worst = max(residuals, default=0)
        if passed is None:
            passed = all(r <= tolerance for r in residuals)
        return cls(name, anchor, len(residuals), worst, tolerance, bool(passed), detail or {})

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "anchor": self.anchor,
            "tested": self.tested,
            "max_residual": encode(self.max_residual),
            "tolerance": encode(self.tolerance),
            "pass": self.passed,
            "detail": encode(self.detail),
        }


@dataclass
class Discrepancy:
    check: str
    entry: str
    derived: object
    printed: object
    count: int = 1
    note: str = ""

    def to_json(self) -> dict:
        return {"check": self.check, "entry": self.entry, "derived": encode(self.derived),
                "printed": encode(self.printed), "count": self.count, "note": self.note}


class DiscrepancyLog:
    """Published-vs-derived differences, one entry per (check, entry) with a hit count.

    The first occurrence keeps its values as the example shown in the report.
    """

    def __init__(self):
        self._items: dict[tuple, Discrepancy] = {}

    def add(self, check: str, entry: str, derived, printed, note: str = ""):
        key = (check, entry)
        if key in self._items:
            self._items[key].count += 1
        else:
            self._items[key] = Discrepancy(check, entry, derived, printed, 1, note)

    def extend(self, other: "DiscrepancyLog"):
        for d in other:
            key = (d.check, d.entry)
            if key in self._items:
                self._items[key].count += d.count
            else:
                self._items[key] = Discrepancy(d.check, d.entry, d.derived, d.printed, d.count, d.note)

    def keys(self) -> set:
        return set(self._items)

    def __iter__(self):
        return iter(self._items.values())

    def __len__(self):
        return len(self._items)


@dataclass
class Report:
    version: str
    command: list
    seed: object
    checks: list = field(default_factory=list)
    discrepancies: DiscrepancyLog = field(default_factory=DiscrepancyLog)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> CheckRecord:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "version": self.version,
            "command": list(self.command),
            "seed": self.seed,
            "checks": [c.to_json() for c in self.checks],
            "discrepancies": [d.to_json() for d in self.discrepancies],
            "pass": self.passed,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    def summary_lines(self) -> list:
        lines = []
        for c in self.checks:
            flag = "PASS" if c.passed else "FAIL"
            lines.append(f"{flag}  {c.name}  max={encode(c.max_residual)}  tol={encode(c.tolerance)}  n={c.tested}")
        for d in self.discrepancies:
            lines.append(f"NOTE  {d.check}[{d.entry}]  derived={encode(d.derived)}  printed={encode(d.printed)}  x{d.count}")
        return lines
