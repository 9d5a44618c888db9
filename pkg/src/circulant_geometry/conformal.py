"""Conformal change ``gbar = alpha g`` of the metric pair.

The barred frame is obtained by running the ordinary pipeline on the field
``(alpha A, alpha B)``; the Christoffel shift and the Lee-form shifts are
then evaluated from the base frame and ``d alpha`` and compared against it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .expr import Expr, Jet2, eval_jet2, is_constant, mul, parse
from .manifold import MetricField, PointFrame, f_identity_rhs, frame_at, lee_forms
from .tensor3 import max_abs, phi_matrix, s_matrix

__all__ = [
    "ConformalData", "NonPositiveConformalFactor", "CorollaryPrecondition",
    "BarredFrame", "barred_frame_at", "christoffel_shift", "barred_lee_forms",
    "check_barred_F_identity", "half_formula", "half_formula_as_printed",
    "CorollaryPoint", "CorollaryReport", "check_corollaries", "compose",
]


class NonPositiveConformalFactor(ValueError):
    def __init__(self, p, value):
        super().__init__(f"conformal factor must be positive, got alpha = {value!r} at p = {p}")
        self.point = p
        self.value = value


class CorollaryPrecondition(ValueError):
    """The corollaries assume the base has ``F = 0``, i.e. constant ``A`` and ``B``."""


@dataclass(frozen=True)
class ConformalData:
    base: MetricField
    alpha: Expr

    @classmethod
    def parse(cls, a: str, b: str, alpha: str) -> "ConformalData":
        return cls(MetricField.parse(a, b), parse(alpha))

    def barred_field(self) -> MetricField:
        return MetricField(mul(self.alpha, self.base.A), mul(self.alpha, self.base.B))


def compose(data: ConformalData, beta: Expr) -> ConformalData:
    """Conformal change by ``alpha`` followed by ``beta``, as a single factor ``alpha beta``."""
    return ConformalData(data.base, mul(data.alpha, beta))


@dataclass(frozen=True)
class BarredFrame:
    """The base frame, the barred frame and the jet of ``alpha`` at one point."""

    base: PointFrame
    bar: PointFrame
    alpha: Jet2
    gamma_shift: np.ndarray  # Christoffel symbols from the shift formula
    crosscheck: dict


def christoffel_shift(frame: PointFrame, alpha: Jet2) -> np.ndarray:
    """``Gamma^k_ij + 1/(2 alpha) (delta^k_j a_i + delta^k_i a_j - g_ij g^{ks} a_s)``."""
    a, da = alpha.value, alpha.grad
    eye = np.eye(3)
    shift = (np.einsum("kj,i->kij", eye, da) + np.einsum("ki,j->kij", eye, da)
             - np.einsum("ij,k->kij", frame.g, frame.g_inv @ da))
    return frame.gamma + shift / (2 * a)


def _alpha_jet(data: ConformalData, p) -> Jet2:
    p = tuple(float(c) for c in p)
    alpha = eval_jet2(data.alpha, p)
    if not alpha.value > 0:
        raise NonPositiveConformalFactor(p, alpha.value)
    return alpha


def barred_frame_at(data: ConformalData, p) -> BarredFrame:
    alpha = _alpha_jet(data, p)
    base = frame_at(data.base, p)
    bar = frame_at(data.barred_field(), p)
    shifted = christoffel_shift(base, alpha)
    a = alpha.value
    crosscheck = {
        "g_bar": max_abs(bar.g - a * base.g),
        "g_tilde_bar": max_abs(bar.g_tilde - a * base.g_tilde),
        "gamma_shift": max_abs(bar.gamma - shifted),
    }
    return BarredFrame(base, bar, alpha, shifted, crosscheck)


def barred_lee_forms(data: ConformalData, p):
    """Lee forms of the barred metric from the shift formulas.

    Returns ``(theta_bar, theta_star_bar, residuals)``.  The residuals compare
    the shifted forms with the traces of the recomputed barred ``F`` and check
    ``theta_star_bar = -1/2 S theta_bar``.
    """
    bf = barred_frame_at(data, p)
    a, da = bf.alpha.value, bf.alpha.grad
    theta_bar = bf.base.theta + 1.5 / a * (phi_matrix() @ da)
    theta_star_bar = bf.base.theta_star - 1.5 / a * da
    th_direct, ts_direct = lee_forms(bf.bar)
    residuals = {
        "theta_bar": max_abs(theta_bar - th_direct),
        "theta_star_bar": max_abs(theta_star_bar - ts_direct),
        "theta_star_bar_from_S": max_abs(theta_star_bar + 0.5 * s_matrix() @ theta_bar),
    }
    return theta_bar, theta_star_bar, residuals


def check_barred_F_identity(data: ConformalData, p) -> float:
    """The four-term identity on the barred data, with the Lee forms from the shift formulas."""
    bf = barred_frame_at(data, p)
    theta_bar, theta_star_bar, _ = barred_lee_forms(data, p)
    rhs = f_identity_rhs(bf.bar.g, bf.bar.g_tilde, theta_bar, theta_star_bar)
    return max_abs(bf.bar.F - rhs)


def half_formula(bar: PointFrame, alpha: Jet2) -> np.ndarray:
    """``Fbar`` over a base with ``F = 0``.

    ``Fbar_kij = 1/(2 alpha) (gbar_ki (Phi da)_j + gbar_kj (Phi da)_i - gtbar_ki a_j - gtbar_kj a_i)``.
    """
    return half_formula_as_printed(bar, alpha) / alpha.value


def half_formula_as_printed(bar: PointFrame, alpha: Jet2) -> np.ndarray:
    """The same combination without the ``1/alpha`` factor.

    Agrees with :func:`half_formula` only where ``alpha = 1``; kept so the
    report can quantify the gap.
    """
    da = alpha.grad
    pda = phi_matrix() @ da
    g, gt = bar.g, bar.g_tilde
    return 0.5 * (np.einsum("ki,j->kij", g, pda) + np.einsum("kj,i->kij", g, pda)
                  - np.einsum("ki,j->kij", gt, da) - np.einsum("kj,i->kij", gt, da))


@dataclass(frozen=True)
class CorollaryPoint:
    p: tuple
    alpha: float
    grad_norm: float
    max_F_bar: float
    half_formula_residual: float
    printed_formula_residual: float


@dataclass(frozen=True)
class CorollaryReport:
    alpha_constant: bool
    points: tuple

    @property
    def half_formula_residual(self) -> float:
        return max(pt.half_formula_residual for pt in self.points)

    @property
    def printed_formula_residual(self) -> float:
        return max(pt.printed_formula_residual for pt in self.points)

    @property
    def max_F_bar(self) -> float:
        return max(pt.max_F_bar for pt in self.points)

    def witness(self, grad_tol: float = 1e-6):
        """First point with ``|d alpha| > grad_tol``, or ``None``."""
        for pt in self.points:
            if pt.grad_norm > grad_tol:
                return pt
        return None

    @property
    def vanishing_ok(self) -> bool:
        """Constant factor gives ``Fbar = 0``; otherwise a witness point has ``|Fbar| > 1e-6``."""
        if self.alpha_constant:
            return self.max_F_bar <= tol.EXACT
        w = self.witness()
        return w is not None and w.max_F_bar > 1e-6

    @property
    def holds(self) -> bool:
        return self.half_formula_residual <= tol.JET and self.vanishing_ok


def check_corollaries(data: ConformalData, points) -> CorollaryReport:
    if not (is_constant(data.base.A) and is_constant(data.base.B)):
        raise CorollaryPrecondition("the corollaries need a base with F = 0: A and B must be constants")
    out = []
    for p in points:
        bf = barred_frame_at(data, p)
        F_bar = bf.bar.F
        out.append(CorollaryPoint(
            p=bf.bar.p,
            alpha=bf.alpha.value,
            grad_norm=float(np.linalg.norm(bf.alpha.grad)),
            max_F_bar=max_abs(F_bar),
            half_formula_residual=max_abs(F_bar - half_formula(bf.bar, bf.alpha)),
            printed_formula_residual=max_abs(F_bar - half_formula_as_printed(bf.bar, bf.alpha)),
        ))
    return CorollaryReport(is_constant(data.alpha), tuple(out))
