"""Acceptance criteria, one test each, at full size and the stated tolerances.

Every test prints a single ``CRITERION n PASS|FAIL`` line (with capture
disabled, so it shows up in a plain ``pytest -v`` log) and then asserts.
"""

import random
import time

import numpy as np
import pytest

from circulant_geometry import suites
from circulant_geometry.errata import KNOWN
from circulant_geometry.expr import eval_jet2, eval_value, parse
from circulant_geometry.liegroup import case_spec, lie_curvature, lie_fundamental, verify_case_propositions


@pytest.fixture
def announce(capsys):
    def emit(n, title, ok, elapsed, limit, **facts):
        ok = ok and (limit is None or elapsed <= limit)
        extra = "  ".join(f"{k}={v}" for k, v in facts.items())
        bound = f" (limit {limit:g}s)" if limit is not None else ""
        with capsys.disabled():
            print(f"\nCRITERION {n} {'PASS' if ok else 'FAIL'}  {title}  {elapsed:.2f}s{bound}  {extra}")
        return ok
    return emit


def _by_name(records):
    return {r.name: r for r in records}


def test_1_F_identity(announce):
    t0 = time.perf_counter()
    records, _ = suites.manifold_suite(suites.DEFAULT_FIELDS, points=100, seed=0)
    elapsed = time.perf_counter() - t0
    rec = _by_name(records)["manifold.F_identity"]
    ok = rec.tested == 300 and rec.max_residual <= 1e-9
    assert announce(1, "F-identity, 3 fields x 100 points", ok, elapsed, 5.0,
                    max_residual=f"{rec.max_residual:.2e}", tol="1e-9")


def test_2_closed_forms(announce):
    t0 = time.perf_counter()
    sampled, log = suites.manifold_suite(suites.DEFAULT_FIELDS, points=100, seed=0)
    rational, rlog = suites.closed_form_rational_suite(seed=0, points=50)
    elapsed = time.perf_counter() - t0
    floats = [r for r in sampled if r.name.startswith("manifold.closed_form.")]
    exact = [r for r in rational if r.name.startswith("manifold.closed_form_rational.")]
    worst_f = max(r.max_residual for r in floats)
    worst_e = max(r.max_residual for r in exact)
    # a tolerance below round-off forces mismatches; each must reach the log with both values
    _, forced = suites.manifold_suite(suites.DEFAULT_FIELDS[2:], points=5, seed=0, tolerance=1e-30)
    logged = list(forced)
    logging_ok = bool(logged) and all(d.derived is not None and d.printed is not None for d in logged)
    ok = (len(floats) == 7 and len(exact) == 7 and worst_f <= 1e-9 and worst_e <= 1e-12
          and len(log) == 0 and len(rlog) == 0 and logging_ok)
    assert announce(2, "closed forms g^-1 gt gt^-1 Gamma F theta theta*", ok, elapsed, None,
                    sampled_max=f"{worst_f:.2e}", rational_max=f"{worst_e:.2e}",
                    logged_when_forced=len(logged))


def test_3_conformal(announce):
    t0 = time.perf_counter()
    records, _ = suites.conformal_suite(suites.DEFAULT_CONFORMAL, points=100, seed=0)
    cor, log = suites.corollary_suite(points=100, seed=0)
    elapsed = time.perf_counter() - t0
    recs = _by_name(records + cor)
    ident = recs["conformal.barred_F_identity"]
    const = recs["conformal.constant_alpha_vanishing"]
    witness = recs["conformal.nonconstant_alpha_witness"]
    w_value = witness.max_residual
    ok = (ident.max_residual <= 1e-9 and ident.tested >= 100 and const.max_residual <= 1e-12
          and const.passed and witness.passed and w_value > 1e-6 and recs["conformal.half_formula"].passed)
    assert announce(3, "barred identity and both corollaries", ok, elapsed, 5.0,
                    identity_max=f"{ident.max_residual:.2e}", const_max_Fbar=f"{const.max_residual:.2e}",
                    witness_max_Fbar=f"{w_value:.3g}", noted=sorted(e for _, e in log.keys()))


def test_4_curvature(announce):
    t0 = time.perf_counter()
    records, _ = suites.curvature_suite(suites.CURVATURE_FIELDS, points=50, seed=0)
    elapsed = time.perf_counter() - t0
    recs = _by_name(records)
    rel = recs["curvature.ricci_relation"]
    sym = max(recs["curvature.riemann_symmetries"].max_residual, recs["curvature.first_bianchi"].max_residual)
    two = recs["curvature.deformation_two_path"]
    ok = rel.tested == 100 and rel.max_residual <= 1e-8 and sym <= 1e-9 and two.max_residual <= 1e-9
    assert announce(4, "rho~ relation, Riemann symmetries, T two-path", ok, elapsed, 10.0,
                    relation_max=f"{rel.max_residual:.2e}", symmetry_max=f"{sym:.2e}",
                    T_max=f"{two.max_residual:.2e}")


def test_5_lie_exact(announce):
    t0 = time.perf_counter()
    records, log = suites.lie_tables_suite(specs=100, seed=0)
    elapsed = time.perf_counter() - t0
    recs = _by_name(records)
    needed = ["lie.reduced_jacobi_equivalence", "lie.torsion_free", "lie.metric_compatible",
              "lie.F_table", "lie.theta_table", "lie.theta_star_table", "lie.R_table",
              "lie.F_table_generic", "lie.theta_generic", "lie.theta_star_generic"]
    failing = [n for n in needed if not recs[n].passed]
    exact = all(recs[n].max_residual == 0 for n in ("lie.reduced_jacobi_equivalence", "lie.torsion_free",
                                                    "lie.metric_compatible"))
    unknown = [k for k in log.keys() if k not in KNOWN]
    ok = not failing and exact and not unknown and all(r.passed for r in records)
    assert announce(5, "Lie exact suite on 100 specs", ok, elapsed, None,
                    failing=failing or "none", logged=len(log), unknown=unknown or "none")


CASE_POINTS = {
    "A": [(1, 0, 0), (1, 1, 1), (2, -1, 3), ("1/2", 0, "-3/4"), ("-5/3", "2/7", 1), (0, 0, 4)],
    "B": [(1, 0), (2, 0), (3, 1), ("-2/3", "5/7"), ("1/2", "-1/2"), (0, 4)],
    "C": [(1, 1), (1, 0), (2, -1), ("1/3", "1/4"), ("-3/2", "5/2"), (0, 7)],
}


def _case_formulas(which, p):
    from fractions import Fraction
    p = [Fraction(x) for x in p]
    if which == "A":
        k = p[0] ** 2 + p[1] ** 2 + p[2] ** 2
        return k, -6 * k
    if which == "B":
        d = (p[0] - p[1]) ** 2
        return Fraction(3, 4) * d, Fraction(-9, 2) * d
    K = p[0] ** 2 + p[0] * p[1] + p[1] ** 2
    return 2 * K, -12 * K


def test_6_case_propositions(announce):
    t0 = time.perf_counter()
    bad = []
    for which, points in CASE_POINTS.items():
        for p in points:
            spec = case_spec(which, *p)
            curv = lie_curvature(spec.full())
            k, tau = _case_formulas(which, p)
            if curv.k != (k, k, k) or curv.tau != tau:
                bad.append((which, p, "k/tau"))
            if which == "A" and any(curv.rho[i, j] != (-2 * k if i == j else 0)
                                    for i in range(3) for j in range(3)):
                bad.append((which, p, "rho"))
            if which == "C":
                F, th, ts = lie_fundamental(spec.full())
                if any(x != 0 for x in F.flat) or any(th) or any(ts):
                    bad.append((which, p, "F"))
                if not verify_case_propositions("C", p).clause("abelian_Q").holds:
                    bad.append((which, p, "[Qx,Qy]"))
    elapsed = time.perf_counter() - t0
    n = sum(len(v) for v in CASE_POINTS.values())
    assert announce(6, "Case A/B/C closed forms, exact", not bad, elapsed, 2.0,
                    parameter_sets=n, failing=bad or "none")


def test_7_scanner(announce):
    t0 = time.perf_counter()
    records, _ = suites.scan_suite(seed=1, trials=1000, threshold=1e-10)
    elapsed = time.perf_counter() - t0
    recs = _by_name(records)
    res, exact, fixed = recs["scan.residuals"], recs["scan.exact_reverification"], recs["scan.fixed_points"]
    ok = res.passed and exact.passed and fixed.passed and res.detail["trials"] == 1000
    assert announce(7, "scanner from 1000 starts", ok, elapsed, 30.0,
                    solutions=res.tested, max_residual=f"{res.max_residual:.2e}",
                    families=res.detail["families"], fixed_starts=fixed.tested)


_POOL = ["2+x1^2", "3+sin(x1)*x2", "1+0.1*x3^2", "2*exp(0.3*(x1+x2+x3))", "0.5*exp(0.2*x1)",
         "x1*x2*x3 + cos(x2)", "sqrt(1+x1^2+x2^2)", "log(2+x1*x2) - x3^3", "(1+x1)/(2+x2^2)",
         "exp(sin(x1*x3))", "(x1+x2)^4 / 10", "cos(x1)*cos(x2)*cos(x3)"]


def test_8_jets_vs_finite_differences(announce):
    t0 = time.perf_counter()
    rng = random.Random(8)
    h, I = 1e-4, np.eye(3)
    worst = 0.0
    for _ in range(200):
        e = parse(rng.choice(_POOL))
        p = np.array([rng.uniform(0.1, 2.0) for _ in range(3)])
        f = lambda q: eval_value(e, q)  # noqa: E731
        grad = np.array([(f(p + h * I[i]) - f(p - h * I[i])) / (2 * h) for i in range(3)])
        hess = np.array([[(f(p + h * (I[i] + I[j])) - f(p + h * (I[i] - I[j]))
                           - f(p - h * (I[i] - I[j])) + f(p - h * (I[i] + I[j]))) / (4 * h * h)
                          for j in range(3)] for i in range(3)])
        j = eval_jet2(e, p)
        for jet, fd in ((j.grad, grad), (j.hess, hess)):
            worst = max(worst, float(np.max(np.abs(jet - fd))) / max(1.0, float(np.max(np.abs(fd)))))
    elapsed = time.perf_counter() - t0
    assert announce(8, "jets vs central differences on 200 pairs", worst <= 1e-5, elapsed, 2.0,
                    max_relative_error=f"{worst:.2e}", tol="1e-5")
