"""Dense dimension-3 tensor algebra.

Index conventions, used by every other module:

* ``Q[j, s]`` is the coefficient of ``e_s`` in ``Q e_j``, so ``Q e_1 = e_2``,
  ``Q e_2 = e_3``, ``Q e_3 = e_1``.  In components ``(Q x)^s = x^j Q[j, s]``.
* Rank-3 ``F[k, i, j] = F(e_k, e_i, e_j)``; the first slot is the
  differentiation slot, ``F[k, i, j] = (nabla_k gt)_{ij}``.
* Christoffel ``gamma[k, i, j] = Gamma^k_{ij}``.
* Curvature with one index up: ``Rup[l, k, i, j]`` is the ``e_l`` component of
  ``R(e_i, e_j) e_k`` where ``R(x, y) = [nabla_x, nabla_y] - nabla_[x,y]``.
* Lowered curvature ``R[i, j, k, l] = g(R(e_i, e_j) e_k, e_l)``.
* Ricci ``rho[j, k] = g^{il} R[i, j, k, l]``.

All functions accept float arrays and also object arrays of
:class:`fractions.Fraction`, in which case results are exact.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "circulant", "circulant_row", "q_matrix", "phi_matrix", "s_matrix",
    "apply_q", "invert3", "SingularMatrixError", "det3",
    "trace_first_pair", "raise_vector", "trace2", "lower_riemann", "ricci_from_riemann",
    "max_abs",
]


class SingularMatrixError(ValueError):
    def __init__(self, det):
        super().__init__(f"matrix is singular (det = {det!r})")
        self.det = det


def circulant(row) -> np.ndarray:
    """``result[i, j] = row[(j - i) % 3]``."""
    row = list(row)
    dtype = object if any(not isinstance(r, (int, float, np.floating, np.integer)) for r in row) else float
    out = np.empty((3, 3), dtype=dtype)
    for i in range(3):
        for j in range(3):
            out[i, j] = row[(j - i) % 3]
    return out


def circulant_row(m) -> np.ndarray:
    """First row of a matrix; inverse of :func:`circulant` on circulant input."""
    return np.asarray(m)[0].copy()


def q_matrix() -> np.ndarray:
    return circulant((0, 1, 0)).astype(int)


def phi_matrix() -> np.ndarray:
    return circulant((0, 1, 1)).astype(int)


def s_matrix() -> np.ndarray:
    return circulant((-1, 1, 1)).astype(int)


def apply_q(x) -> np.ndarray:
    """Components of ``Q x`` for a vector with components ``x``."""
    return np.asarray(x) @ q_matrix()


def det3(m) -> object:
    m = np.asarray(m)
    return (m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
            - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
            + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0]))


def invert3(m, min_det: float = 1e-12) -> np.ndarray:
    """Inverse by the adjugate formula.

    Float input is rejected when ``|det| <= min_det``; exact input only when
    the determinant is exactly zero.
    """
    m = np.asarray(m)
    d = det3(m)
    exact = m.dtype == object
    if (d == 0) if exact else not abs(d) > min_det:
        raise SingularMatrixError(d)
    adj = np.empty((3, 3), dtype=m.dtype if exact else float)
    for i in range(3):
        for j in range(3):
            r = [x for x in range(3) if x != j]
            c = [x for x in range(3) if x != i]
            minor = m[r[0], c[0]] * m[r[1], c[1]] - m[r[0], c[1]] * m[r[1], c[0]]
            adj[i, j] = minor if (i + j) % 2 == 0 else -minor
    return adj / d


def trace_first_pair(g_inv, t) -> np.ndarray:
    """``g^{ij} T_{ijk}``."""
    return np.einsum("ij,ijk->k", g_inv, t)


def raise_vector(g_inv, v) -> np.ndarray:
    """``v^k = g^{ks} v_s``."""
    return np.einsum("ks,s->k", g_inv, v)


def trace2(g_inv, m) -> object:
    """``g^{ij} M_{ij}``."""
    return np.einsum("ij,ij->", g_inv, m)


def lower_riemann(r_up, g) -> np.ndarray:
    """``R[i, j, k, l] = g_{lm} Rup[m, k, i, j]``."""
    return np.einsum("lm,mkij->ijkl", g, r_up)


def ricci_from_riemann(g_inv, r) -> np.ndarray:
    """``rho[j, k] = g^{il} R[i, j, k, l]``."""
    return np.einsum("il,ijkl->jk", g_inv, r)


def max_abs(a) -> float:
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a.astype(float))))
