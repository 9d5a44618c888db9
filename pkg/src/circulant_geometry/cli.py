"""Command-line front end.

    circulant-geometry manifold check   --A EXPR --B EXPR [--points N] [--seed S] [--box lo,hi]
    circulant-geometry manifold curvature --A EXPR --B EXPR [--point x1,x2,x3]
    circulant-geometry conformal check  --A EXPR --B EXPR --alpha EXPR
    circulant-geometry lie check        --constants c1,...,c9
    circulant-geometry lie case         --case A|B|C --l1 P --l2 P [--n2 P]
    circulant-geometry lie scan         [--trials N] [--threshold T]
    circulant-geometry selftest

Every command writes a JSON report (to --out, default stdout) and prints a
one-line-per-check summary to stderr.  Exit codes: 0 all checks pass,
1 some check fails, 2 usage or parse error, 3 metric guard or expression
domain error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from importlib import metadata

import numpy as np

from . import suites
from .conformal import ConformalData, NonPositiveConformalFactor
from .curvature import curvature_frame_at, deformation_closed_form, ricci_relation_residual
from .expr import ExprDomainError, ParseError, is_constant
from .liegroup import LieAlgebraSpec
from .manifold import DEFAULT_BOX, GuardViolation, MetricField
from .report import CheckRecord, DiscrepancyLog, Report

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "0.1.0"


def _expr_arg(text: str) -> str:
    """Inline expression, or ``@path`` to read it from a file."""
    if text.startswith("@"):
        try:
            with open(text[1:], encoding="utf-8") as fh:
                return fh.read().strip()
        except OSError as exc:
            raise argparse.ArgumentTypeError(f"cannot read {text[1:]}: {exc.strerror}") from None
    return text


def _floats(n):
    def conv(text):
        try:
            vals = tuple(float(t) for t in text.split(","))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected {n} comma-separated numbers, got {text!r}") from None
        if len(vals) != n:
            raise argparse.ArgumentTypeError(f"expected {n} comma-separated numbers, got {len(vals)}")
        return vals
    return conv


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _rationals(text: str) -> tuple:
    return tuple(_rational(t) for t in text.split(","))


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="circulant-geometry",
                                     description="Verify identities of circulant structures on 3-manifolds.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {_version()}")
    sub = parser.add_subparsers(dest="group", required=True)

    def common(p, seed_default=0):
        p.add_argument("--seed", type=_seed, default=seed_default)
        p.add_argument("--out", default="-", help="report path, '-' for stdout")
        p.add_argument("--tol", type=float, default=None, help="override the default tolerances")
        p.add_argument("--quiet", action="store_true", help="no summary on stderr")

    def field_args(p):
        p.add_argument("--A", required=True, type=_expr_arg, help="expression in x1, x2, x3 or @file")
        p.add_argument("--B", required=True, type=_expr_arg, help="expression in x1, x2, x3 or @file")
        p.add_argument("--points", type=int, default=100)
        p.add_argument("--box", type=_floats(2), default=DEFAULT_BOX, help="sample box lo,hi")

    manifold = sub.add_parser("manifold").add_subparsers(dest="command", required=True)
    p = manifold.add_parser("check", help="F-identity and closed forms at sampled points")
    field_args(p)
    common(p)
    p = manifold.add_parser("curvature", help="curvature suite, or a dump at one --point")
    field_args(p)
    p.add_argument("--point", type=_floats(3), default=None)
    common(p)

    conformal = sub.add_parser("conformal").add_subparsers(dest="command", required=True)
    p = conformal.add_parser("check", help="conformal change gbar = alpha g")
    field_args(p)
    p.add_argument("--alpha", required=True, type=_expr_arg)
    common(p)

    lie = sub.add_parser("lie").add_subparsers(dest="command", required=True)
    p = lie.add_parser("check", help="one set of nine structure constants")
    p.add_argument("--constants", required=True, type=_rationals,
                   help="lam1,lam2,lam3,mu1,mu2,mu3,nu1,nu2,nu3 as integers or p/q")
    common(p)
    p = lie.add_parser("case", help="propositions for Case A, B or C")
    p.add_argument("--case", required=True, choices=["A", "B", "C", "a", "b", "c"])
    p.add_argument("--l1", required=True, type=_rational)
    p.add_argument("--l2", required=True, type=_rational)
    p.add_argument("--n2", type=_rational, default=None, help="third parameter, Case A only")
    common(p)
    p = lie.add_parser("scan", help="numerical search of the invariance variety")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--threshold", type=float, default=1e-10)
    common(p, seed_default=1)

    p = sub.add_parser("selftest", help="constant-matrix identities")
    common(p)
    return parser


# ----------------------------------------------------------------------------

def _merge(*results):
    records, log = [], DiscrepancyLog()
    for r, l in results:
        records += r
        log.extend(l)
    return records, log


def _dump_point(field: MetricField, p, tolerance):
    cf = curvature_frame_at(field, p)
    fr = cf.frame
    detail = {
        "point": fr.p, "A": fr.A.value, "B": fr.B.value, "D": fr.D,
        "g": fr.g, "g_tilde": fr.g_tilde, "gamma": fr.gamma, "F": fr.F,
        "theta": fr.theta, "theta_star": fr.theta_star,
        "R": cf.R, "rho": cf.rho, "tau": cf.tau, "tau_star": cf.tau_star,
        "R_tilde": cf.R_tilde, "rho_tilde": cf.rho_tilde, "tau_tilde": cf.tau_tilde,
        "tau_tilde_star": cf.tau_tilde_star, "T": cf.T,
    }
    t = tolerance if tolerance is not None else 1e-8
    worst = max(fr.crosscheck.values())
    records = [
        CheckRecord.of("manifold.point_crosschecks", "closed forms at the point", [worst], t,
                       {k: v for k, v in fr.crosscheck.items()}),
        CheckRecord.of("curvature.point_ricci_relation", "rho~ relation at the point",
                       [ricci_relation_residual(cf)], t),
        CheckRecord.of("curvature.point_deformation", "T two-path at the point",
                       [float(np.max(np.abs(cf.T - deformation_closed_form(fr))))], t),
        CheckRecord("curvature.point_dump", "PointFrame and CurvatureFrame", 1, 0.0, 0.0, True, detail),
    ]
    return records, DiscrepancyLog()


def _run(args):
    group, command = args.group, getattr(args, "command", None)
    t = args.tol
    if group == "selftest":
        return suites.selftest_suite()
    if group == "manifold":
        pair = ((args.A, args.B),)
        if command == "check":
            return suites.manifold_suite(pair, args.points, args.seed, tuple(args.box), t)
        field = MetricField.parse(args.A, args.B)
        if args.point is not None:
            return _dump_point(field, args.point, t)
        return suites.curvature_suite(pair, args.points, args.seed, tuple(args.box), t)
    if group == "conformal":
        case = ((args.A, args.B, args.alpha),)
        data = ConformalData.parse(args.A, args.B, args.alpha)
        results = [suites.conformal_suite(case, args.points, args.seed, tuple(args.box), t)]
        # 1. the corollaries only apply over a base with F = 0
        if is_constant(data.base.A) and is_constant(data.base.B):
            alpha_const = is_constant(data.alpha)
            results.append(suites.corollary_suite(args.points, args.seed, tuple(args.box), t,
                                                  witness_alpha=None if alpha_const else args.alpha,
                                                  constant_alpha=args.alpha if alpha_const else None,
                                                  base=(args.A, args.B)))
        return _merge(*results)
    if group == "lie":
        if command == "check":
            if len(args.constants) != 9:
                raise UsageError(f"--constants needs 9 values, got {len(args.constants)}")
            return suites.lie_check_suite(LieAlgebraSpec.from_constants(args.constants))
        if command == "case":
            which = args.case.upper()
            if which == "A":
                if args.n2 is None:
                    raise UsageError("Case A needs --n2")
                params = (args.l1, args.l2, args.n2)
            else:
                if args.n2 is not None:
                    raise UsageError(f"Case {which} takes only --l1 and --l2")
                params = (args.l1, args.l2)
            return suites.lie_case_suite(which, params)
        if command == "scan":
            if args.trials < 1:
                raise UsageError("--trials must be at least 1")
            return suites.scan_suite(args.seed, args.trials, args.threshold if t is None else t)
    raise UsageError(f"unknown command {group} {command}")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_PASS
    try:
        records, log = _run(args)
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GuardViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ExprDomainError, NonPositiveConformalFactor) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN

    seed = getattr(args, "seed", None)
    report = Report(_version(), ["circulant-geometry"] + argv, seed, records, log)
    text = report.dumps()
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    if not args.quiet:
        for line in report.summary_lines():
            print(line, file=sys.stderr)
        print("PASS" if report.passed else "FAIL", file=sys.stderr)
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
