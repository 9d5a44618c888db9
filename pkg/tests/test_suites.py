"""Every default suite is green, and the set of logged published-vs-derived
differences is exactly the frozen list of known errata."""

import pytest

from circulant_geometry import suites
from circulant_geometry.errata import KNOWN

EXPECTED_DISCREPANCIES = {
    ("lie.F_table_generic", "313"),
    ("lie.theta_star_generic", "1"), ("lie.theta_star_generic", "2"), ("lie.theta_star_generic", "3"),
    ("lie.jacobi_printed", "1"), ("lie.jacobi_printed", "2"), ("lie.jacobi_printed", "3"),
    ("lie.R_table_mu_only", "1332"),
    ("case.C", "rho_components"), ("case.C", "einstein"), ("case.C", "constant_curvature"),
    ("conformal.half_formula_printed", "F_bar"),
}

RUNS = {
    "manifold": lambda: suites.manifold_suite(points=20),
    "rational": lambda: suites.closed_form_rational_suite(points=20),
    "curvature": lambda: suites.curvature_suite(points=10),
    "conformal": lambda: suites.conformal_suite(points=20),
    "corollary": lambda: suites.corollary_suite(points=20),
    "lie": lambda: suites.lie_tables_suite(specs=40),
    "cases": suites.lie_cases_suite,
    "scan": lambda: suites.scan_suite(trials=100),
    "selftest": suites.selftest_suite,
}


@pytest.fixture(scope="module")
def results():
    return {name: fn() for name, fn in RUNS.items()}


@pytest.mark.parametrize("name", sorted(RUNS))
def test_suite_is_green(results, name):
    records, _ = results[name]
    assert records
    assert [r.name for r in records if not r.passed] == []


def test_discrepancy_keys_are_frozen(results):
    keys = set()
    for _, log in results.values():
        keys |= log.keys()
    assert keys == EXPECTED_DISCREPANCIES
    assert set(KNOWN) == EXPECTED_DISCREPANCIES
