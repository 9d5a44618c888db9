"""Pointwise geometry of a circulant metric ``g = circulant(A, B, B)``.

Every quantity is computed twice: once by the generic Levi-Civita machinery
(ground truth) and once by the component closed forms specific to the
circulant metric.  The deviations between the two land in
``PointFrame.crosscheck`` and are judged by the callers.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .expr import Expr, Jet2, eval_jet2, parse
from .tensor3 import (
    circulant, invert3, max_abs, phi_matrix, q_matrix, raise_vector, s_matrix, trace_first_pair,
)

__all__ = [
    "MetricField", "GuardViolation", "PointFrame",
    "metric_jets", "christoffel", "frame_at", "fundamental_tensor", "lee_forms",
    "f_identity_rhs", "check_F_identity", "check_tilde_g_identities", "metricity_residual",
    "sample_points", "DEFAULT_BOX",
    "g_inv_closed_form", "g_tilde_closed_form", "g_tilde_inv_closed_form",
    "christoffel_closed_form", "fundamental_closed_form", "theta_closed_form",
    "theta_star_closed_form",
]

DEFAULT_BOX = (0.1, 2.0)
MIN_D = 1e-10

_I = np.eye(3)
_J = np.ones((3, 3))
# g = A*I + B*(J - I);  gt = A*(J - I) + B*(J + I)
_G_COEFFS = (_I, _J - _I)
_GT_COEFFS = (_J - _I, _J + _I)


@dataclass(frozen=True)
class MetricField:
    """Circulant metric with diagonal ``A`` and off-diagonal ``B``."""

    A: Expr
    B: Expr

    @classmethod
    def parse(cls, a: str, b: str) -> "MetricField":
        return cls(parse(a), parse(b))


class GuardViolation(ValueError):
    """The metric is not positive definite (or too close to singular) at a point."""

    def __init__(self, p, A: float, B: float):
        D = (A - B) * (A + 2 * B)
        super().__init__(
            f"metric guard violated at p={tuple(float(c) for c in p)}: "
            f"need A > B > 0 and D > {MIN_D}, got A={A!r}, B={B!r}, D={D!r}")
        self.point = tuple(p)
        self.A, self.B, self.D = A, B, D


def guard_ok(A: float, B: float) -> bool:
    return A > B > 0 and (A - B) * (A + 2 * B) > MIN_D


def metric_jets(A: Jet2, B: Jet2, coeffs=_G_COEFFS):
    """Metric entries with their first and second partials.

    Returns ``(g, dg, ddg)`` with ``dg[i, j, k] = d_k g_ij`` and
    ``ddg[i, j, k, l] = d_k d_l g_ij``.
    """
    a, b = coeffs
    g = a * A.value + b * B.value
    dg = np.einsum("ij,k->ijk", a, A.grad) + np.einsum("ij,k->ijk", b, B.grad)
    ddg = np.einsum("ij,kl->ijkl", a, A.hess) + np.einsum("ij,kl->ijkl", b, B.hess)
    return g, dg, ddg


def tilde_metric_jets(A: Jet2, B: Jet2):
    return metric_jets(A, B, _GT_COEFFS)


def christoffel(g_inv, dg) -> np.ndarray:
    """``Gamma^k_ij = 1/2 g^{ks} (d_i g_sj + d_j g_si - d_s g_ij)``."""
    term = np.einsum("sji->sij", dg) + dg - np.einsum("ijs->sij", dg)
    return 0.5 * np.einsum("ks,sij->kij", g_inv, term)


def covariant_derivative_2form(h, dh, gamma) -> np.ndarray:
    """``(nabla_k h)_ij = d_k h_ij - Gamma^s_ki h_sj - Gamma^s_kj h_si``, indexed ``[k, i, j]``."""
    return (np.einsum("ijk->kij", dh)
            - np.einsum("ski,sj->kij", gamma, h)
            - np.einsum("skj,si->kij", gamma, h))


# ----------------------------------------------------------------------------
# closed forms for the circulant metric
# ----------------------------------------------------------------------------

def g_inv_closed_form(A: float, B: float) -> np.ndarray:
    D = (A - B) * (A + 2 * B)
    return circulant((A + B, -B, -B)) / D


def g_tilde_closed_form(A: float, B: float) -> np.ndarray:
    return circulant((2 * B, A + B, A + B))


def g_tilde_inv_closed_form(A: float, B: float) -> np.ndarray:
    D = (A - B) * (A + 2 * B)
    return circulant((-A - 3 * B, A + B, A + B)) / (2 * D)


def christoffel_closed_form(A: float, B: float, dA, dB) -> np.ndarray:
    """Christoffel symbols from the four component cases (all indices distinct,
    all equal, ``Gamma^k_ii`` and ``Gamma^i_ij``)."""
    D = (A - B) * (A + 2 * B)
    out = np.empty((3, 3, 3))
    for k in range(3):
        for i in range(3):
            for j in range(3):
                if i == j == k:
                    o1, o2 = [x for x in range(3) if x != i]
                    v = (A + B) * dA[i] - B * (4 * dB[i] - dA[o1] - dA[o2])
                elif i == j:
                    m = 3 - i - k
                    v = (A + B) * (2 * dB[i] - dA[k]) - B * (2 * dB[i] - dA[m] + dA[i])
                elif k in (i, j):
                    # Gamma^a_ab with a = k and b the other lower index
                    a, b = k, (j if k == i else i)
                    c = 3 - a - b
                    v = (A + B) * dA[b] - B * (-dB[c] + dB[a] + dB[b] + dA[a])
                else:
                    v = (A + B) * (-dB[k] + dB[i] + dB[j]) - B * (dA[i] + dA[j])
                out[k, i, j] = v / (2 * D)
    return out


def fundamental_closed_form(dA, dB) -> np.ndarray:
    """Component table of ``F[k, i, j]`` (symmetric in ``i, j``)."""
    A1, A2, A3 = dA
    B1, B2, B3 = dB
    table = {
        (0, 0, 0): -2 * B1 + A2 + A3,
        (1, 0, 0): -B1 + B2 + B3 - A1,
        (2, 0, 0): -B1 + B2 + B3 - A1,
        (0, 0, 1): 0.5 * (A3 - B1 - B2 + B3),
        (1, 1, 0): 0.5 * (A3 - B1 - B2 + B3),
        (2, 0, 1): B3 - 0.5 * (A1 + A2),
        (1, 1, 1): -2 * B2 + A1 + A3,
        (2, 1, 1): B1 - B2 + B3 - A2,
        (0, 1, 1): B1 - B2 + B3 - A2,
        (0, 0, 2): 0.5 * (A2 - B1 + B2 - B3),
        (2, 2, 0): 0.5 * (A2 - B1 + B2 - B3),
        (1, 0, 2): B2 - 0.5 * (A1 + A3),
        (0, 1, 2): B1 - 0.5 * (A2 + A3),
        (1, 1, 2): 0.5 * (A1 + B1 - B2 - B3),
        (2, 2, 1): 0.5 * (A1 + B1 - B2 - B3),
        (0, 2, 2): B1 + B2 - B3 - A3,
        (1, 2, 2): B1 + B2 - B3 - A3,
        (2, 2, 2): -2 * B3 + A1 + A2,
    }
    F = np.empty((3, 3, 3))
    for (k, i, j), v in table.items():
        F[k, i, j] = F[k, j, i] = v
    return F


def theta_closed_form(A: float, B: float, dA, dB) -> np.ndarray:
    D = (A - B) * (A + 2 * B)
    out = np.empty(3)
    for i in range(3):
        j, k = [x for x in range(3) if x != i]
        out[i] = 1.5 / D * ((A + B) * (dA[j] + dA[k]) + 2 * B * (dA[i] - dB[j] - dB[k]) - 2 * A * dB[i])
    return out


def theta_star_closed_form(A: float, B: float, dA, dB) -> np.ndarray:
    D = (A - B) * (A + 2 * B)
    out = np.empty(3)
    for i in range(3):
        j, k = [x for x in range(3) if x != i]
        out[i] = -1.5 / D * ((A - 2 * B) * dB[i] - A * (dB[j] + dB[k] - dA[i]) + B * (dA[j] + dA[k]))
    return out


# ----------------------------------------------------------------------------
# frames
# ----------------------------------------------------------------------------

def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class PointFrame:
    """All first-order geometric data of ``(M, g, Q)`` at one point."""

    p: tuple
    A: Jet2
    B: Jet2
    g: np.ndarray
    g_inv: np.ndarray
    g_tilde: np.ndarray
    g_tilde_inv: np.ndarray
    gamma: np.ndarray
    F: np.ndarray
    theta: np.ndarray
    theta_star: np.ndarray
    closed: dict = dc_field(default_factory=dict, repr=False)
    crosscheck: dict = dc_field(default_factory=dict)

    @property
    def D(self) -> float:
        return (self.A.value - self.B.value) * (self.A.value + 2 * self.B.value)


def fundamental_tensor(frame: PointFrame) -> np.ndarray:
    """``F[k, i, j] = (nabla_k gt)_ij`` by the covariant-derivative formula."""
    gt, dgt, _ = tilde_metric_jets(frame.A, frame.B)
    return covariant_derivative_2form(gt, dgt, frame.gamma)


def lee_forms(frame: PointFrame, F=None):
    """``theta(x) = g^{ij} F(e_i, e_j, x)`` and ``theta*(x) = g^{ij} F(e_i, Q e_j, x)``."""
    F = frame.F if F is None else F
    theta = trace_first_pair(frame.g_inv, F)
    theta_star = np.einsum("ij,js,isx->x", frame.g_inv, q_matrix(), F)
    return theta, theta_star


def f_identity_rhs(g, g_tilde, theta, theta_star) -> np.ndarray:
    """``1/3 (g_kj th_i + g_ki th_j + gt_kj th*_i + gt_ki th*_j)`` indexed ``[k, i, j]``."""
    return (np.einsum("kj,i->kij", g, theta) + np.einsum("ki,j->kij", g, theta)
            + np.einsum("kj,i->kij", g_tilde, theta_star)
            + np.einsum("ki,j->kij", g_tilde, theta_star)) / 3


def check_F_identity(frame: PointFrame) -> float:
    """Max deviation of ``F`` from the four-term identity in ``g``, ``gt``, ``theta``, ``theta*``."""
    rhs = f_identity_rhs(frame.g, frame.g_tilde, frame.theta, frame.theta_star)
    return max_abs(frame.F - rhs)


def check_tilde_g_identities(frame: PointFrame) -> float:
    """Raising/lowering ``theta`` and ``theta*`` with ``gt`` versus the expected combinations."""
    th, ts = frame.theta, frame.theta_star
    th_up = raise_vector(frame.g_inv, th)
    ts_up = raise_vector(frame.g_inv, ts)
    gt, gti = frame.g_tilde, frame.g_tilde_inv
    residuals = [
        gti @ th + ts_up,
        gt @ th_up - (th - 2 * ts),
        gt @ ts_up + th,
        gti @ ts + 0.5 * (th_up + ts_up),
    ]
    return max(max_abs(r) for r in residuals)


def metricity_residual(frame: PointFrame) -> float:
    g, dg, _ = metric_jets(frame.A, frame.B)
    return max_abs(covariant_derivative_2form(g, dg, frame.gamma))


def frame_at(field: MetricField, p) -> PointFrame:
    """Evaluate the metric pair, connection, ``F`` and Lee forms at ``p``."""
    p = tuple(float(c) for c in p)
    A, B = eval_jet2(field.A, p), eval_jet2(field.B, p)
    a, b = A.value, B.value
    if not guard_ok(a, b):
        raise GuardViolation(p, a, b)

    g, dg, _ = metric_jets(A, B)
    gt, _, _ = tilde_metric_jets(A, B)
    g_inv = invert3(g)
    gt_inv = invert3(gt)
    gamma = christoffel(g_inv, dg)

    closed = {
        "g_inv": g_inv_closed_form(a, b),
        "g_tilde": g_tilde_closed_form(a, b),
        "g_tilde_inv": g_tilde_inv_closed_form(a, b),
        "gamma": christoffel_closed_form(a, b, A.grad, B.grad),
        "F": fundamental_closed_form(A.grad, B.grad),
        "theta": theta_closed_form(a, b, A.grad, B.grad),
        "theta_star": theta_star_closed_form(a, b, A.grad, B.grad),
    }
    frame = PointFrame(p, A, B, _frozen(g), _frozen(g_inv), _frozen(gt), _frozen(gt_inv),
                       _frozen(gamma), _frozen(np.zeros((3, 3, 3))), _frozen(np.zeros(3)),
                       _frozen(np.zeros(3)))
    F = fundamental_tensor(frame)
    theta, theta_star = lee_forms(frame, F)
    frame = PointFrame(p, A, B, frame.g, frame.g_inv, frame.g_tilde, frame.g_tilde_inv,
                       frame.gamma, _frozen(F), _frozen(theta), _frozen(theta_star), closed)

    derived = {"g_inv": g_inv, "g_tilde": gt, "g_tilde_inv": gt_inv, "gamma": gamma,
               "F": F, "theta": theta, "theta_star": theta_star}
    crosscheck = {name: max_abs(derived[name] - closed[name]) for name in closed}
    crosscheck["theta_star_from_S"] = max_abs(theta_star + 0.5 * s_matrix() @ theta)
    crosscheck["phi_from_metrics"] = max_abs(g_inv @ gt - phi_matrix())
    frame.crosscheck.update(crosscheck)
    return frame


def sample_points(field: MetricField, n: int, seed: int, box=DEFAULT_BOX,
                  max_tries: int = 100) -> list[tuple]:
    """``n`` seeded uniform points in ``box**3`` where the metric guard holds.

    Each rejected draw is retried; ``max_tries`` consecutive rejections raise
    :class:`GuardViolation` for the last rejected point.
    """
    lo, hi = box
    rng = np.random.default_rng(seed)
    pts = []
    for _ in range(n):
        for _ in range(max_tries):
            p = tuple(float(c) for c in rng.uniform(lo, hi, size=3))
            a = eval_jet2(field.A, p).value
            b = eval_jet2(field.B, p).value
            if guard_ok(a, b):
                pts.append(p)
                break
        else:
            raise GuardViolation(p, a, b)
    return pts
