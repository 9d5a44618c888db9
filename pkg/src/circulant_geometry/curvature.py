"""Curvature of ``g`` and of the associated metric ``gt``.

The same engine runs on both metrics: given the metric entries with their
first and second partials it returns the connection, its derivative and the
curvature tensor.  Second partials of the metric come straight from the
jets, so no third derivatives are needed anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .manifold import (
    MetricField, PointFrame, christoffel, frame_at, metric_jets, tilde_metric_jets,
)
from .tensor3 import (
    invert3, lower_riemann, max_abs, raise_vector, ricci_from_riemann, trace2,
)
from . import tolerances as tol

__all__ = [
    "LeviCivita", "levi_civita", "CurvatureFrame", "curvature_frame_at",
    "riemann_at", "scalars_at", "deformation_tensor_at", "deformation_closed_form",
    "ricci_relation_residual", "check_ricci_relation", "almost_einstein_fit",
    "DegenerateFitError", "riemann_symmetry_residuals", "ricci_decomposition_residual",
    "FlatCorollaryReport", "check_flat_tilde_corollary",
    "flat_tilde_conclusion_residual", "flat_base_conclusion_residual",
]


@dataclass(frozen=True)
class LeviCivita:
    g: np.ndarray
    g_inv: np.ndarray
    gamma: np.ndarray  # [k, i, j]
    dgamma: np.ndarray  # [k, i, j, l] = d_l Gamma^k_ij
    r_up: np.ndarray  # [l, k, i, j]
    R: np.ndarray  # [i, j, k, l]
    rho: np.ndarray
    tau: float


def levi_civita(g, dg, ddg) -> LeviCivita:
    g_inv = invert3(g)
    gamma = christoffel(g_inv, dg)
    term = np.einsum("sji->sij", dg) + dg - np.einsum("ijs->sij", dg)
    dterm = (np.einsum("sjil->sijl", ddg) + ddg - np.einsum("ijsl->sijl", ddg))
    dg_inv = -np.einsum("ka,abl,bs->ksl", g_inv, dg, g_inv)
    dgamma = 0.5 * (np.einsum("ksl,sij->kijl", dg_inv, term)
                    + np.einsum("ks,sijl->kijl", g_inv, dterm))
    # R^l_kij = d_i Gamma^l_jk - d_j Gamma^l_ik + Gamma^l_is Gamma^s_jk - Gamma^l_js Gamma^s_ik
    r_up = (np.einsum("ljki->lkij", dgamma) - np.einsum("likj->lkij", dgamma)
            + np.einsum("lis,sjk->lkij", gamma, gamma)
            - np.einsum("ljs,sik->lkij", gamma, gamma))
    R = lower_riemann(r_up, g)
    rho = ricci_from_riemann(g_inv, R)
    tau = float(trace2(g_inv, rho))
    return LeviCivita(g, g_inv, gamma, dgamma, r_up, R, rho, tau)


@dataclass(frozen=True)
class CurvatureFrame:
    frame: PointFrame
    base: LeviCivita
    tilde: LeviCivita
    tau_star: float  # gt^{ij} rho_ij
    tau_tilde_star: float  # g^{ij} rho~_ij
    T: np.ndarray  # Gamma~ - Gamma, [k, i, j]

    @property
    def R(self):
        return self.base.R

    @property
    def rho(self):
        return self.base.rho

    @property
    def tau(self):
        return self.base.tau

    @property
    def R_tilde(self):
        return self.tilde.R

    @property
    def rho_tilde(self):
        return self.tilde.rho

    @property
    def tau_tilde(self):
        return self.tilde.tau

    @property
    def gamma_tilde(self):
        return self.tilde.gamma


def curvature_frame_at(field: MetricField, p) -> CurvatureFrame:
    frame = frame_at(field, p)
    base = levi_civita(*metric_jets(frame.A, frame.B))
    tilde = levi_civita(*tilde_metric_jets(frame.A, frame.B))
    tau_star = float(trace2(tilde.g_inv, base.rho))
    tau_tilde_star = float(trace2(base.g_inv, tilde.rho))
    return CurvatureFrame(frame, base, tilde, tau_star, tau_tilde_star, tilde.gamma - base.gamma)


def riemann_at(field: MetricField, p) -> np.ndarray:
    frame = frame_at(field, p)
    return levi_civita(*metric_jets(frame.A, frame.B)).R


def scalars_at(field: MetricField, p):
    """``(tau, tau*, tau~, tau~*)``."""
    cf = curvature_frame_at(field, p)
    return cf.tau, cf.tau_star, cf.tau_tilde, cf.tau_tilde_star


def deformation_closed_form(frame: PointFrame) -> np.ndarray:
    """``T^k_ij = -1/6 (2 g_ij th*^k + gt_ij (th^k + th*^k))``."""
    th_up = raise_vector(frame.g_inv, frame.theta)
    ts_up = raise_vector(frame.g_inv, frame.theta_star)
    return -(2 * np.einsum("ij,k->kij", frame.g, ts_up)
             + np.einsum("ij,k->kij", frame.g_tilde, th_up + ts_up)) / 6


def deformation_tensor_at(field: MetricField, p) -> np.ndarray:
    """``Gamma~ - Gamma`` from the generic Christoffel formula on both metrics."""
    return curvature_frame_at(field, p).T


def ricci_relation_residual(cf: CurvatureFrame) -> float:
    """Deviation of ``rho~`` from ``rho + 1/3 (tau~* - tau) g + 1/6 (2 tau~ - 2 tau* + tau~* - tau) gt``."""
    g, gt = cf.frame.g, cf.frame.g_tilde
    t, ts, tt, tts = cf.tau, cf.tau_star, cf.tau_tilde, cf.tau_tilde_star
    rhs = cf.rho + (tts - t) / 3 * g + (2 * tt - 2 * ts + tts - t) / 6 * gt
    return max_abs(cf.rho_tilde - rhs)


def check_ricci_relation(field: MetricField, p) -> float:
    return ricci_relation_residual(curvature_frame_at(field, p))


class DegenerateFitError(ValueError):
    pass


_UPPER = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]


def almost_einstein_fit(rho, g, g_tilde):
    """Least-squares ``(beta, gamma)`` with ``rho ~ beta g + gamma gt``.

    Fits over the six independent symmetric components by the 2x2 normal
    equations, which stay exact for :class:`~fractions.Fraction` input.
    Returns ``(beta, gamma, residual)`` where residual is the post-fit max
    deviation.
    """
    r = [rho[i][j] for i, j in _UPPER]
    u = [g[i][j] for i, j in _UPPER]
    v = [g_tilde[i][j] for i, j in _UPPER]
    uu = sum(x * x for x in u)
    vv = sum(x * x for x in v)
    uv = sum(x * y for x, y in zip(u, v))
    ur = sum(x * y for x, y in zip(u, r))
    vr = sum(x * y for x, y in zip(v, r))
    det = uu * vv - uv * uv
    exact = all(isinstance(x, (int, Fraction)) for x in u + v + r)
    if (det == 0) if exact else abs(det) <= 1e-12 * uu * vv:
        raise DegenerateFitError("g and g~ are linearly dependent; fit basis is degenerate")
    beta = (ur * vv - vr * uv) / det
    gamma = (vr * uu - ur * uv) / det
    resid = [abs(ri - beta * ui - gamma * vi) for ri, ui, vi in zip(r, u, v)]
    return beta, gamma, max(resid)


def riemann_symmetry_residuals(R) -> dict:
    R = np.asarray(R)
    return {
        "antisym_first_pair": max_abs(R + np.einsum("jikl->ijkl", R)),
        "antisym_second_pair": max_abs(R + np.einsum("ijlk->ijkl", R)),
        "pair_symmetry": max_abs(R - np.einsum("klij->ijkl", R)),
        "first_bianchi": max_abs(R + np.einsum("jkil->ijkl", R) + np.einsum("kijl->ijkl", R)),
    }


def ricci_decomposition_residual(R, rho, tau, g) -> float:
    """Distance of ``R`` from its 3-dimensional expression through ``rho``, ``tau``, ``g``."""
    expected = (np.einsum("jk,il->ijkl", rho, g) - np.einsum("ik,jl->ijkl", rho, g)
                + np.einsum("jk,il->ijkl", g, rho) - np.einsum("ik,jl->ijkl", g, rho)
                - tau / 2 * (np.einsum("jk,il->ijkl", g, g) - np.einsum("ik,jl->ijkl", g, g)))
    return max_abs(np.asarray(R) - expected)


def flat_tilde_conclusion_residual(rho, tau, tau_star, g, g_tilde) -> float:
    """Deviation of ``rho`` from ``tau/3 g + (2 tau* + tau)/6 gt``."""
    return max_abs(np.asarray(rho) - (tau / 3 * np.asarray(g) + (2 * tau_star + tau) / 6 * np.asarray(g_tilde)))


def flat_base_conclusion_residual(rho_tilde, tau_tilde, tau_tilde_star, g, g_tilde) -> float:
    """Deviation of ``rho~`` from ``tau~*/3 g + (tau~* + 2 tau~)/6 gt``."""
    return max_abs(np.asarray(rho_tilde) - (tau_tilde_star / 3 * np.asarray(g)
                                            + (tau_tilde_star + 2 * tau_tilde) / 6 * np.asarray(g_tilde)))


@dataclass(frozen=True)
class FlatCorollaryReport:
    tilde_flat: bool
    tilde_conclusion_residual: float | None
    base_flat: bool
    base_conclusion_residual: float | None

    @property
    def holds(self) -> bool:
        ok_t = not self.tilde_flat or self.tilde_conclusion_residual <= tol.CURVATURE
        ok_b = not self.base_flat or self.base_conclusion_residual <= tol.CURVATURE
        return ok_t and ok_b

    def describe(self) -> str:
        parts = []
        for label, flat, res in (("gt flat", self.tilde_flat, self.tilde_conclusion_residual),
                                 ("g flat", self.base_flat, self.base_conclusion_residual)):
            if flat:
                parts.append(f"{label}: conclusion residual {res:.3e}")
            else:
                parts.append(f"{label}: hypothesis not satisfied, vacuously true")
        return "; ".join(parts)


def check_flat_tilde_corollary(field: MetricField, p, flat_tol: float = tol.JET) -> FlatCorollaryReport:
    """Almost-Einstein conclusions under local flatness of ``gt`` (resp. ``g``),
    evaluated only when the hypothesis holds at ``p``."""
    cf = curvature_frame_at(field, p)
    g, gt = cf.frame.g, cf.frame.g_tilde
    tilde_flat = max_abs(cf.R_tilde) <= flat_tol
    base_flat = max_abs(cf.R) <= flat_tol
    rt = flat_tilde_conclusion_residual(cf.rho, cf.tau, cf.tau_star, g, gt) if tilde_flat else None
    rb = (flat_base_conclusion_residual(cf.rho_tilde, cf.tau_tilde, cf.tau_tilde_star, g, gt)
          if base_flat else None)
    return FlatCorollaryReport(tilde_flat, rt, base_flat, rb)
