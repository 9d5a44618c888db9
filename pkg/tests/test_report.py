import json
from fractions import Fraction

import numpy as np

from circulant_geometry.report import CheckRecord, DiscrepancyLog, Report, encode


def test_encode():
    assert encode(Fraction(-3, 4)) == "-3/4"
    assert encode(0.1) == "0.1"
    assert encode(np.float64(2.5)) == "2.5"
    assert encode(7) == 7 and encode(True) is True and encode(None) is None
    assert encode(np.array([[Fraction(1, 2), 1.0]], dtype=object)) == [["1/2", "1.0"]]
    assert encode({1: (0.5,)}) == {"1": ["0.5"]}


def test_record_from_residuals():
    r = CheckRecord.of("x", "a = b", [1e-13, 3e-12], 1e-12)
    assert not r.passed and r.tested == 2 and r.max_residual == 3e-12
    assert CheckRecord.of("x", "a = b", [], 1e-12).passed
    assert CheckRecord.of("x", "a = b", [5.0], 1e-12, passed=True).passed


def test_log_merges_duplicates():
    log = DiscrepancyLog()
    log.add("c", "1", 1, 2)
    log.add("c", "1", 3, 4)
    other = DiscrepancyLog()
    other.add("c", "1", 5, 6)
    other.add("c", "2", 5, 6)
    log.extend(other)
    items = {(d.check, d.entry): d for d in log}
    assert items["c", "1"].count == 3 and items["c", "1"].derived == 1
    assert log.keys() == {("c", "1"), ("c", "2")}


def test_report_schema():
    log = DiscrepancyLog()
    log.add("c", "e", Fraction(1, 3), 0, "why")
    rep = Report("0.1.0", ["prog", "x"], 4, [CheckRecord.of("n", "a", [0.0], 1e-9)], log)
    data = json.loads(rep.dumps())
    assert list(data) == ["version", "command", "seed", "checks", "discrepancies", "pass"]
    assert list(data["checks"][0]) == ["name", "anchor", "tested", "max_residual", "tolerance", "pass", "detail"]
    assert data["discrepancies"][0] == {"check": "c", "entry": "e", "derived": "1/3", "printed": 0,
                                        "count": 1, "note": "why"}
    assert data["pass"] is True
    assert rep.summary_lines()[0].startswith("PASS  n")
    assert rep.summary_lines()[1].startswith("NOTE  c[e]")
