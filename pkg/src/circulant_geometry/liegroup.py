"""Left-invariant circulant structures on 3-dimensional Lie groups.

The Lie algebra is spanned by an orthonormal frame ``x1, x2, x3`` on which
``Q x1 = x2``, ``Q x2 = x3``, ``Q x3 = x1`` and the brackets are

    [x1, x2] = lam1 x1 + lam2 x2 + lam3 x3
    [x1, x3] = mu1 x1 + mu2 x2 + mu3 x3
    [x2, x3] = nu1 x1 + nu2 x2 + nu3 x3

Everything except the scanner runs in exact rational arithmetic, so the
propositions about the three case families are checked with equality.

Derived quantities come from first principles (Koszul formula, covariant
derivative of ``gt``, curvature of the connection).  The published component
tables are transcribed separately in the ``*_as_printed`` and ``*_table``
helpers so they can be compared entry by entry.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .manifold import f_identity_rhs
from .tensor3 import invert3, ricci_from_riemann, trace2

__all__ = [
    "LieAlgebraSpec", "ReducedSpec", "JacobiViolation",
    "structure_tensor", "bracket", "jacobiator", "jacobi_residual",
    "jacobi_residual_as_printed", "reduced_jacobi_residual", "mu_defect",
    "koszul_connection", "connection_as_printed", "torsion_defect", "metric_compatibility_defect",
    "TILDE_G", "TILDE_G_INV", "lie_fundamental", "class_identity_residual",
    "LieCurvature", "lie_curvature", "invariance_residual", "plane_curvature_gaps",
    "fundamental_table", "theta_table", "theta_star_table",
    "fundamental_table_reduced", "theta_table_reduced", "theta_star_table_reduced",
    "curvature_table", "table_mismatches", "Mismatch",
    "case_spec", "case_parameter_names", "Clause", "CaseReport", "verify_case_propositions",
    "q_bracket_defect", "random_spec", "random_reduced_spec", "random_valid_spec",
    "ScanSolution", "ScanResult", "StartOutcome", "scan_invariance_variety", "tag_family",
]

Rational = Fraction
_ZERO = Fraction(0)


def _fr(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("structure constants must be exact; pass int, Fraction or a 'p/q' string")
    return Fraction(x)


def _triple(xs) -> tuple:
    xs = tuple(_fr(x) for x in xs)
    if len(xs) != 3:
        raise ValueError(f"expected 3 constants, got {len(xs)}")
    return xs


def _obj(shape) -> np.ndarray:
    a = np.empty(shape, dtype=object)
    a.fill(_ZERO)
    return a


@dataclass(frozen=True)
class LieAlgebraSpec:
    """The nine structure constants ``lam = C_12``, ``mu = C_13``, ``nu = C_23``."""

    lam: tuple
    mu: tuple
    nu: tuple

    def __post_init__(self):
        object.__setattr__(self, "lam", _triple(self.lam))
        object.__setattr__(self, "mu", _triple(self.mu))
        object.__setattr__(self, "nu", _triple(self.nu))

    @classmethod
    def from_constants(cls, values) -> "LieAlgebraSpec":
        """Nine values in the order ``lam1..3, mu1..3, nu1..3``."""
        values = [_fr(v) for v in values]
        if len(values) != 9:
            raise ValueError(f"expected 9 structure constants, got {len(values)}")
        return cls(values[0:3], values[3:6], values[6:9])

    def constants(self) -> tuple:
        return self.lam + self.mu + self.nu

    def is_mu_constrained(self) -> bool:
        return all(d == 0 for d in mu_defect(self))

    def reduced(self) -> "ReducedSpec":
        if not self.is_mu_constrained():
            raise ValueError("mu is not determined by lam and nu for this spec")
        return ReducedSpec(self.lam, self.nu)


@dataclass(frozen=True)
class ReducedSpec:
    """``lam`` and ``nu`` only; ``mu`` is rebuilt as ``(nu2+lam3, nu3+lam1, nu1+lam2)``."""

    lam: tuple
    nu: tuple

    def __post_init__(self):
        object.__setattr__(self, "lam", _triple(self.lam))
        object.__setattr__(self, "nu", _triple(self.nu))

    @property
    def mu(self) -> tuple:
        l1, l2, l3 = self.lam
        n1, n2, n3 = self.nu
        return (n2 + l3, n3 + l1, n1 + l2)

    def full(self) -> LieAlgebraSpec:
        return LieAlgebraSpec(self.lam, self.mu, self.nu)

    def constants(self) -> tuple:
        return self.lam + self.nu

    def scaled(self, s) -> "ReducedSpec":
        s = _fr(s)
        return ReducedSpec([s * x for x in self.lam], [s * x for x in self.nu])


def _as_full(spec) -> LieAlgebraSpec:
    return spec.full() if isinstance(spec, ReducedSpec) else spec


def mu_defect(spec: LieAlgebraSpec) -> tuple:
    """``mu - (nu2+lam3, nu3+lam1, nu1+lam2)``; zero exactly on the class of interest."""
    spec = _as_full(spec)
    expected = ReducedSpec(spec.lam, spec.nu).mu
    return tuple(m - e for m, e in zip(spec.mu, expected))


# ----------------------------------------------------------------------------
# brackets and the Jacobi identity
# ----------------------------------------------------------------------------

def structure_tensor(spec) -> np.ndarray:
    """``C[i, j, k]`` is the ``x_k`` coefficient of ``[x_i, x_j]``."""
    spec = _as_full(spec)
    C = _obj((3, 3, 3))
    for (i, j), row in {(0, 1): spec.lam, (0, 2): spec.mu, (1, 2): spec.nu}.items():
        for k in range(3):
            C[i, j, k] = row[k]
            C[j, i, k] = -row[k]
    return C


def bracket(spec, u, v) -> tuple:
    """``[u, v]`` for vectors given by their frame components."""
    C = structure_tensor(spec)
    u = [_fr(x) for x in u]
    v = [_fr(x) for x in v]
    return tuple(sum(u[i] * v[j] * C[i, j, k] for i in range(3) for j in range(3))
                 for k in range(3))


def jacobiator(spec) -> tuple:
    """Components of ``[x1,[x2,x3]] + [x2,[x3,x1]] + [x3,[x1,x2]]``."""
    e = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    total = [_ZERO] * 3
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        term = bracket(spec, e[a], bracket(spec, e[b], e[c]))
        total = [t + x for t, x in zip(total, term)]
    return tuple(total)


def jacobi_residual(spec) -> tuple:
    """The three Jacobi polynomials in ``lam, mu, nu``.

    These are the components ``(-J1, J3, J2)`` of the Jacobiator, written so
    that each one matches the form of the corresponding published equation
    up to the sign corrections noted in :func:`jacobi_residual_as_printed`.
    """
    spec = _as_full(spec)
    l1, l2, l3 = spec.lam
    m1, m2, m3 = spec.mu
    n1, n2, n3 = spec.nu
    return (n1 * (m3 + l2) - n2 * l1 - m1 * n3,
            l3 * (m1 + n2) - n3 * l2 - m3 * l1,
            m2 * (n3 - l1) - n2 * m3 + l2 * m1)


def jacobi_residual_as_printed(spec) -> tuple:
    """The published system verbatim, ``lhs - rhs`` for each equation.

    It differs from :func:`jacobi_residual` by one sign in each equation and
    is therefore not identically zero on Lie algebras.
    """
    spec = _as_full(spec)
    l1, l2, l3 = spec.lam
    m1, m2, m3 = spec.mu
    n1, n2, n3 = spec.nu
    return (n1 * (m3 - l2) - (n2 * l1 + m1 * n3),
            l3 * (m1 - n2) - (n3 * l2 + m3 * l1),
            m2 * (n3 - l1) - (n2 * m3 + l2 * m1))


def reduced_jacobi_residual(spec: ReducedSpec) -> tuple:
    l1, l2, l3 = spec.lam
    n1, n2, n3 = spec.nu
    return (2 * n1 * l2 + n1 * n1 - l1 * n2 - n2 * n3 - l3 * n3,
            2 * n2 * l3 + l3 * l3 - l2 * n3 - l1 * l2 - l1 * n1,
            -l1 * l1 + n3 * n3 + l2 * l3 - n1 * n2)


class JacobiViolation(ValueError):
    def __init__(self, residual):
        super().__init__(f"structure constants violate the Jacobi identity (residual {residual})")
        self.residual = residual


def _require_jacobi(spec):
    r = jacobi_residual(spec)
    if any(x != 0 for x in r):
        raise JacobiViolation(r)


# ----------------------------------------------------------------------------
# connection
# ----------------------------------------------------------------------------

def koszul_connection(spec, require_jacobi: bool = True) -> np.ndarray:
    """``c[i, j, k]``: the ``x_k`` coefficient of ``nabla_{x_i} x_j``.

    With an orthonormal frame the Koszul formula reduces to
    ``c_ijk = 1/2 (C_ij^k + C_ki^j + C_kj^i)``.
    """
    if require_jacobi:
        _require_jacobi(spec)
    C = structure_tensor(spec)
    half = Fraction(1, 2)
    c = _obj((3, 3, 3))
    for i, j, k in itertools.product(range(3), repeat=3):
        c[i, j, k] = half * (C[i, j, k] + C[k, i, j] + C[k, j, i])
    return c


def connection_as_printed(spec) -> np.ndarray:
    """The published nine-line table of ``nabla_{x_i} x_j``."""
    spec = _as_full(spec)
    l1, l2, l3 = spec.lam
    m1, m2, m3 = spec.mu
    n1, n2, n3 = spec.nu
    h = Fraction(1, 2)
    rows = {
        (0, 0): (0, -l1, -m1),
        (0, 1): (l1, 0, h * (l3 - m2 - n1)),
        (0, 2): (m1, h * (m2 - l3 + n1), 0),
        (1, 0): (0, -l2, -h * (l3 + n1 + m2)),
        (1, 1): (l2, 0, -n2),
        (1, 2): (h * (n1 + m2 + l3), n2, 0),
        (2, 0): (0, h * (n1 - m2 - l3), -m3),
        (2, 1): (h * (-n1 + m2 + l3), 0, -n3),
        (2, 2): (m3, n3, 0),
    }
    c = _obj((3, 3, 3))
    for (i, j), row in rows.items():
        for k in range(3):
            c[i, j, k] = _fr(row[k])
    return c


def torsion_defect(spec, c) -> np.ndarray:
    """``nabla_{x_i} x_j - nabla_{x_j} x_i - [x_i, x_j]``."""
    return c - np.einsum("jik->ijk", c) - structure_tensor(spec)


def metric_compatibility_defect(c) -> np.ndarray:
    """``g(nabla_{x_i} x_j, x_k) + g(x_j, nabla_{x_i} x_k)`` with ``g`` orthonormal."""
    return c + np.einsum("ikj->ijk", c)


# ----------------------------------------------------------------------------
# fundamental tensor and Lee forms
# ----------------------------------------------------------------------------

def _const_matrix(fn) -> np.ndarray:
    m = _obj((3, 3))
    for i in range(3):
        for j in range(3):
            m[i, j] = Fraction(fn(i, j))
    return m


IDENTITY = _const_matrix(lambda i, j: i == j)
TILDE_G = _const_matrix(lambda i, j: i != j)
TILDE_G_INV = invert3(TILDE_G)


def lie_fundamental(spec, require_jacobi: bool = True):
    """``(F, theta, theta_star)`` with ``F[i, j, k] = (nabla_{x_i} gt)(x_j, x_k)``.

    ``gt`` has constant entries on the frame, so only the connection terms
    survive.  The Lee forms are the orthonormal-frame traces
    ``theta_x = sum_i F(x_i, x_i, x)`` and ``theta*_x = sum_i F(x_i, Q x_i, x)``.
    """
    c = koszul_connection(spec, require_jacobi)
    F = -np.einsum("ijs,sk->ijk", c, TILDE_G) - np.einsum("iks,sj->ijk", c, TILDE_G)
    theta = tuple(sum(F[i, i, x] for i in range(3)) for x in range(3))
    theta_star = tuple(sum(F[i, (i + 1) % 3, x] for i in range(3)) for x in range(3))
    return F, theta, theta_star


def class_identity_residual(spec, require_jacobi: bool = True) -> np.ndarray:
    """``F`` minus the four-term combination of ``g``, ``gt``, ``theta`` and ``theta*``."""
    F, th, ts = lie_fundamental(spec, require_jacobi)
    return F - f_identity_rhs(IDENTITY, TILDE_G, np.array(th, dtype=object),
                              np.array(ts, dtype=object))


# ----------------------------------------------------------------------------
# curvature
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class LieCurvature:
    R: np.ndarray  # R[i, j, k, l] = g(R(x_i, x_j) x_k, x_l)
    rho: np.ndarray
    tau: Fraction
    tau_star: Fraction
    k: tuple  # (k23, k13, k12)


def lie_curvature(spec, require_jacobi: bool = True) -> LieCurvature:
    """``R(x_i, x_j) x_k = nabla_i nabla_j x_k - nabla_j nabla_i x_k - nabla_[x_i, x_j] x_k``."""
    c = koszul_connection(spec, require_jacobi)
    C = structure_tensor(spec)
    R = (np.einsum("jks,isl->ijkl", c, c) - np.einsum("iks,jsl->ijkl", c, c)
         - np.einsum("ijs,skl->ijkl", C, c))
    rho = ricci_from_riemann(IDENTITY, R)
    tau = trace2(IDENTITY, rho)
    tau_star = trace2(TILDE_G_INV, rho)
    # basis planes are orthonormal, so the denominator of k is 1
    k = (R[1, 2, 1, 2], R[0, 2, 0, 2], R[0, 1, 0, 1])
    return LieCurvature(R, rho, _fr(tau), _fr(tau_star), k)


def invariance_residual(spec: ReducedSpec) -> tuple:
    """The two published polynomials expressing ``R1212 = R1313 = R2323``."""
    l1, l2, l3 = spec.lam
    n1, n2, n3 = spec.nu
    p1 = (l1 * l1 + l3 * l3 + l1 * n3 + l3 * n3 + l1 * l3 + l2 * n1 + l3 * n1 + 2 * l3 * n2)
    p2 = (n1 * n1 + n3 * n3 + l3 * n2 + l1 * n3 + l3 * n1 + l1 * n1 + n3 * n1 + 2 * l2 * n1)
    return p1, p2


def plane_curvature_gaps(curv: LieCurvature) -> tuple:
    """``(R1313 - R2323, R1313 - R1212)``."""
    R = curv.R
    return R[0, 2, 0, 2] - R[1, 2, 1, 2], R[0, 2, 0, 2] - R[0, 1, 0, 1]


# ----------------------------------------------------------------------------
# published tables
# ----------------------------------------------------------------------------

def _spec_symbols(spec):
    spec = _as_full(spec)
    return spec.lam + spec.mu + spec.nu


def fundamental_table(spec) -> dict:
    """Published ``F_ijk`` for general constants, keyed by the digit string ``"ijk"``."""
    l1, l2, l3, m1, m2, m3, n1, n2, n3 = _spec_symbols(spec)
    h = Fraction(1, 2)
    return {
        "111": 2 * l1 + 2 * m1,
        "112": h * (2 * m1 + m2 - l3 + n1),
        "113": h * (2 * l1 + l3 - m2 - n1),
        "122": -2 * l1 + n1 + m2 - l3,
        "123": -l1 - m1,
        "133": -2 * m1 - n1 - m2 + l3,
        "211": 2 * l2 + n1 + m2 + l3,
        "213": l2 - n2,
        "221": h * (l3 + n1 + m2 + 2 * n2),
        "222": -2 * l2 + 2 * n2,
        "223": -h * (2 * l2 + n1 + m2 + l3),
        "233": -l3 - n1 - 2 * n2 - m2,
        "311": l3 - n1 + m2 + 2 * m3,
        "312": n3 + m3,
        "313": -h * (-l1 + n1 - m2 + 2 * n3),
        "322": -l3 + n1 - m2 + 2 * n3,
        "332": -h * (l3 - n1 + m2 + 2 * m3),
        "333": -2 * m3 - 2 * n3,
    }


def theta_table(spec) -> dict:
    l1, l2, l3, m1, m2, m3, n1, n2, n3 = _spec_symbols(spec)
    return {
        "1": 2 * l1 + l3 + 2 * m1 + m2 + n2 - n3,
        "2": -2 * l2 - l3 + m1 - m3 + n1 + 2 * n2,
        "3": l1 - l2 - m2 - 2 * m3 - n1 - 2 * n3,
    }


def theta_star_table(spec) -> dict:
    l1, l2, l3, m1, m2, m3, n1, n2, n3 = _spec_symbols(spec)
    h = Fraction(1, 2)
    return {
        "1": -h * (-l1 - 3 * l2 - 2 * l3 - m1 - 2 * m2 - 3 * m3 + n2 - n3),
        "2": -h * (3 * l1 + l2 + 2 * l3 + m1 - m3 - 2 * n1 - n2 - 3 * n3),
        "3": -h * (l1 - l2 + 3 * m1 + 2 * m2 + m3 + 2 * n1 + 3 * n2 + n3),
    }


def fundamental_table_reduced(spec: ReducedSpec) -> dict:
    """Published ``F_ijk`` once ``mu`` is eliminated."""
    l1, l2, l3 = spec.lam
    n1, n2, n3 = spec.nu
    h = Fraction(1, 2)
    a = l1 + l3 + n1 + 2 * n2 + n3
    b = l1 + l3 - n1 - n3
    c = l1 + 2 * l2 + l3 + n1 + n3
    return {
        "111": 2 * l1 + 2 * l3 + 2 * n2,
        "112": h * a, "221": h * a,
        "113": h * b, "331": h * b,
        "222": -2 * l2 + 2 * n2,
        "123": -l1 - l3 - n2,
        "211": c, "311": c,
        "223": -h * c, "332": -h * c,
        "233": -l1 - l3 - n1 - 2 * n2 - n3, "133": -l1 - l3 - n1 - 2 * n2 - n3,
        "312": l2 + n1 + n3,
        "213": l2 - n2,
        "122": -l1 - l3 + n1 + n3, "322": -l1 - l3 + n1 + n3,
        "333": -2 * l2 - 2 * n1 - 2 * n3,
    }


def theta_table_reduced(spec: ReducedSpec) -> dict:
    l1, l2, l3 = spec.lam
    n1, n2, n3 = spec.nu
    return {"1": 3 * (l1 + l3 + n2), "2": 3 * (n2 - l2), "3": -3 * (l2 + n1 + n3)}


def theta_star_table_reduced(spec: ReducedSpec) -> dict:
    l1, l2, l3 = spec.lam
    n1, n2, n3 = spec.nu
    t = Fraction(3, 2)
    return {"1": t * (l1 + 2 * l2 + l3 + n1 + n3),
            "2": -t * (l1 + l3 - n1 - n3),
            "3": -t * (l1 + l3 + n1 + 2 * n2 + n3)}


def curvature_table(spec: ReducedSpec) -> dict:
    """Published ``R_ijkl`` once ``mu`` is eliminated."""
    l1, l2, l3 = spec.lam
    n1, n2, n3 = spec.nu
    q, h, tq = Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)
    return {
        "1212": (-q * (l1 + n1 + n3) ** 2 + tq * l3 ** 2 + l1 ** 2 + l2 ** 2 + n2 * l3 + n2 ** 2
                 + h * l1 * l3 + h * n3 * l3 - h * l3 * n1),
        "1313": (tq * (l1 + n3) ** 2 - q * (l3 - n1) ** 2 + (l3 + n2) ** 2 + (l2 + n1) ** 2
                 + h * (l1 + n3) * (n1 + l3) - l1 * n3),
        "2323": (-q * l1 ** 2 + l2 ** 2 - q * l3 ** 2 + tq * n1 ** 2 + n2 ** 2 + tq * n3 ** 2
                 + h * l1 * (-n3 + n1 - l3) - h * l3 * n3 + l2 * n1 - h * n1 * l3 + h * n1 * n3),
        "1223": -l2 * l3 + l1 * n1 + l1 ** 2 + l1 * n3 + l3 * n3,
        "1213": l2 * (l1 + n1 + n3) + l3 * (l1 + l2 + n1),
        "1332": -l1 * n2 - n2 * n3 - l3 * n1 - n2 * l3 - n1 * n3 - n2 * n1,
    }


@dataclass(frozen=True)
class Mismatch:
    table: str
    entry: str
    derived: Fraction
    printed: Fraction


def _lookup(arr, key: str):
    return arr[tuple(int(ch) - 1 for ch in key)]


def table_mismatches(name: str, derived, printed: dict) -> list:
    """Entries of a published table that differ from the derived array."""
    out = []
    for key, value in printed.items():
        d = _lookup(derived, key)
        if d != value:
            out.append(Mismatch(name, key, d, _fr(value)))
    return out


# ----------------------------------------------------------------------------
# the three case families
# ----------------------------------------------------------------------------

_CASE_PARAMS = {"A": ("lam1", "lam2", "nu2"), "B": ("lam1", "lam2"), "C": ("lam1", "lam2")}


def case_parameter_names(which: str) -> tuple:
    return _CASE_PARAMS[which.upper()]


def case_spec(which: str, *params) -> ReducedSpec:
    which = which.upper()
    if which not in _CASE_PARAMS:
        raise ValueError(f"unknown case {which!r}; expected A, B or C")
    if len(params) != len(_CASE_PARAMS[which]):
        raise ValueError(f"case {which} takes parameters {_CASE_PARAMS[which]}")
    p = [_fr(x) for x in params]
    if which == "A":
        a, b, v = p
        return ReducedSpec((a, b, 0), (0, v, -a))
    a, b = p
    if which == "B":
        return ReducedSpec((a, b, -a - b), (-a - b, a, b))
    return ReducedSpec((a, b, -a - b), (a, b, -a - b))


def _case_f_table(which: str, p) -> tuple:
    """Published ``F``, ``theta`` and ``theta*`` for one case, or ``None`` when not tabulated."""
    if which == "A":
        a, b, v = p
        F = {"111": 2 * a + 2 * v, "112": v, "113": a, "122": -2 * a, "322": -2 * a,
             "123": -a - v, "221": v, "222": -2 * b + 2 * v, "223": -b, "211": 2 * b,
             "311": 2 * b, "213": b - v, "133": -2 * v, "233": -2 * v, "312": b - a,
             "313": a, "332": -b, "333": -2 * b + 2 * a}
        th = {"1": 3 * (a + v), "2": 3 * (v - b), "3": 3 * (a - b)}
        ts = {"1": 3 * b, "2": -3 * a, "3": -3 * v}
        return F, th, ts
    if which == "B":
        a, b = p
        d = a - b
        F = {k: 2 * d for k in ("111", "222", "333")}
        F.update({k: d / 2 for k in ("112", "221", "223", "313", "332", "113")})
        F.update({k: -d for k in ("122", "123", "211", "213", "133", "233", "311", "312", "322")})
        th = {str(i): 3 * d for i in (1, 2, 3)}
        ts = {str(i): -Fraction(3, 2) * d for i in (1, 2, 3)}
        return F, th, ts
    zero_F = {"".join(map(str, k)): 0 for k in itertools.product((1, 2, 3), repeat=3)}
    zero_v = {str(i): 0 for i in (1, 2, 3)}
    return zero_F, zero_v, dict(zero_v)


def _case_scale(which: str, p) -> tuple:
    """``(K, printed R value, printed rho value, printed tau, printed k, R entries, rho entries)``."""
    if which == "A":
        a, b, v = p
        K = a * a + b * b + v * v
        return K, K, -2 * K, -6 * K, K, ("1212", "2323", "1313"), ("11", "22", "33")
    if which == "B":
        a, b = p
        K = (a - b) ** 2
        t = Fraction(3, 4) * K
        return K, t, -Fraction(3, 2) * K, -Fraction(9, 2) * K, t, ("1212", "2323", "1313"), ("11", "22", "33")
    a, b = p
    K = a * a + a * b + b * b
    return (K, 2 * K, -4 * K, -12 * K, 2 * K,
            ("1212", "2323", "1313", "1332", "1223", "1321"),
            ("11", "22", "33", "12", "13", "23"))


def _riemann_orbit(i, j, k, l):
    """Index tuples related to ``(i, j, k, l)`` by the Riemann symmetries, with signs."""
    seen = {}
    for (a, b, c, d), s in (((i, j, k, l), 1), ((j, i, k, l), -1), ((i, j, l, k), -1), ((j, i, l, k), 1)):
        seen[(a, b, c, d)] = s
        seen[(c, d, a, b)] = s
    return seen


def _expected_riemann(entries: dict) -> np.ndarray:
    """Dense tensor implied by a list of named components, all others zero.

    Returns ``None`` if two listed components contradict each other through
    the symmetries.
    """
    out = _obj((3, 3, 3, 3))
    fixed = {}
    for key, value in entries.items():
        idx = tuple(int(ch) - 1 for ch in key)
        for pos, sign in _riemann_orbit(*idx).items():
            v = sign * value
            if pos in fixed and fixed[pos] != v:
                return None
            fixed[pos] = v
            out[pos] = v
    return out


def _expected_symmetric(entries: dict) -> np.ndarray:
    out = _obj((3, 3))
    for key, value in entries.items():
        i, j = (int(ch) - 1 for ch in key)
        out[i, j] = out[j, i] = value
    return out


def q_bracket_defect(spec) -> list:
    """Pairs ``(i, j)`` (1-based) with ``[Q x_i, Q x_j] != [x_i, x_j]``."""
    e = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    bad = []
    for i, j in ((0, 1), (0, 2), (1, 2)):
        if bracket(spec, e[(i + 1) % 3], e[(j + 1) % 3]) != bracket(spec, e[i], e[j]):
            bad.append((i + 1, j + 1))
    return bad


@dataclass(frozen=True)
class Clause:
    """One claim of a case proposition, compared exactly."""

    name: str
    holds: bool
    derived: object = None
    printed: object = None
    note: str = ""


@dataclass(frozen=True)
class CaseReport:
    which: str
    params: tuple
    spec: ReducedSpec
    curvature: LieCurvature
    clauses: tuple = field(default_factory=tuple)

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.clauses)

    def clause(self, name: str) -> Clause:
        for c in self.clauses:
            if c.name == name:
                return c
        raise KeyError(name)


def _tensor_diff(derived, expected) -> list:
    """Index strings where two arrays differ."""
    diffs = []
    for idx in itertools.product(range(3), repeat=np.asarray(derived).ndim):
        if derived[idx] != expected[idx]:
            diffs.append("".join(str(i + 1) for i in idx))
    return diffs


def _almost_einstein(rho):
    """Exact ``(beta, gamma, defect)`` with ``rho = beta g + gamma gt`` on the frame."""
    # on the frame g = I and gt = J - I, so beta is the diagonal and gamma the off-diagonal
    beta = rho[0, 0]
    gamma = rho[0, 1]
    defect = rho - beta * IDENTITY - gamma * TILDE_G
    return beta, gamma, defect


def verify_case_propositions(which: str, params) -> CaseReport:
    """Check each clause of the proposition for one case family, exactly."""
    which = which.upper()
    p = tuple(_fr(x) for x in params)
    spec = case_spec(which, *p)
    full = spec.full()
    clauses = []

    def add(name, holds, derived=None, printed=None, note=""):
        clauses.append(Clause(name, bool(holds), derived, printed, note))

    add("jacobi", all(x == 0 for x in reduced_jacobi_residual(spec)), reduced_jacobi_residual(spec), (0, 0, 0))
    add("invariance", all(x == 0 for x in invariance_residual(spec)), invariance_residual(spec), (0, 0))

    F, th, ts = lie_fundamental(full)
    F_p, th_p, ts_p = _case_f_table(which, p)
    bad_F = table_mismatches("F", F, F_p)
    add("F_table", not bad_F, [m.entry for m in bad_F] or None, None,
        "all published entries" if not bad_F else "entries differ: " + ", ".join(m.entry for m in bad_F))
    th_arr, ts_arr = np.array(th, dtype=object), np.array(ts, dtype=object)
    add("theta", not table_mismatches("theta", th_arr, th_p), th, tuple(th_p[k] for k in "123"))
    add("theta_star", not table_mismatches("theta*", ts_arr, ts_p), ts, tuple(ts_p[k] for k in "123"))

    curv = lie_curvature(full)
    K, r_val, rho_val, tau_val, k_val, r_keys, rho_keys = _case_scale(which, p)
    R_expected = _expected_riemann({key: r_val for key in r_keys})
    r_diff = _tensor_diff(curv.R, R_expected) if R_expected is not None else ["inconsistent listing"]
    add("R_components", not r_diff, {key: _lookup(curv.R, key) for key in r_keys}, r_val,
        "" if not r_diff else "differs at " + ", ".join(r_diff[:6]))
    rho_expected = _expected_symmetric({key: rho_val for key in rho_keys})
    rho_diff = _tensor_diff(curv.rho, rho_expected)
    add("rho_components", not rho_diff, {key: curv.rho[int(key[0]) - 1, int(key[1]) - 1] for key in ("11", "12")},
        rho_val, "" if not rho_diff else "differs at " + ", ".join(rho_diff))

    add("tau", curv.tau == tau_val, curv.tau, tau_val)
    einstein_defect = curv.rho - curv.tau / 3 * IDENTITY
    add("einstein", all(x == 0 for x in einstein_defect.flat), None, None, "rho = tau/3 g")
    beta, gamma, defect = _almost_einstein(curv.rho)
    add("almost_einstein", all(x == 0 for x in defect.flat), (beta, gamma), None,
        f"rho = {beta} g + {gamma} gt")

    add("basis_plane_k", all(x == k_val for x in curv.k), curv.k, k_val)
    const = _obj((3, 3, 3, 3))
    for i, j, kk, l in itertools.product(range(3), repeat=4):
        const[i, j, kk, l] = k_val * (int(i == kk and j == l) - int(i == l and j == kk))
    add("constant_curvature", all(x == 0 for x in (curv.R - const).flat), None, k_val,
        "R = k (g_ik g_jl - g_il g_jk) on every plane")

    if which == "C":
        bad = q_bracket_defect(full)
        add("abelian_Q", not bad, bad or None, None, "[Q x_i, Q x_j] = [x_i, x_j]")
    return CaseReport(which, p, spec, curv, tuple(clauses))


# ----------------------------------------------------------------------------
# random specs
# ----------------------------------------------------------------------------

def _rand_fraction(rng: random.Random, bound: int = 5, max_den: int = 4) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, max_den))


def random_spec(rng: random.Random, bound: int = 5, max_den: int = 4) -> LieAlgebraSpec:
    """Nine independent small rationals; generally not a Lie algebra."""
    return LieAlgebraSpec.from_constants(_rand_fraction(rng, bound, max_den) for _ in range(9))


def random_reduced_spec(rng: random.Random, bound: int = 5, max_den: int = 4) -> ReducedSpec:
    """Six independent small rationals; generally violates the reduced Jacobi system."""
    vals = [_rand_fraction(rng, bound, max_den) for _ in range(6)]
    return ReducedSpec(vals[:3], vals[3:])


def _quadric(l1, l2, l3, n3):
    return (l1 * l1 + l1 * l2 - l1 * l3 + l1 * n3 - 2 * l2 * l3 + l2 * n3 + l3 * l3 - 2 * l3 * n3)


def random_valid_spec(rng: random.Random, max_tries: int = 1000) -> ReducedSpec:
    """A rational solution of the reduced Jacobi system away from the case families.

    1. Solutions with ``lam1 != 0`` project onto the quadric ``q(lam1, lam2,
       lam3, nu3) = 0``.  Rational points on it come from intersecting a
       random rational line through the point ``(1, 0, 0, -1)`` with it.
    2. The second equation then gives ``nu1 = alpha nu2 + beta``.
    3. ``E1 + alpha E3`` is linear in ``nu2``, which fixes ``nu2``.
    4. All three equations are re-checked exactly; degenerate draws retry.
    """
    p0 = (Fraction(1), Fraction(0), Fraction(0), Fraction(-1))
    for _ in range(max_tries):
        d = [Fraction(rng.randint(-5, 5)) for _ in range(4)]
        qd = _quadric(*d)
        if qd == 0:
            continue
        shifted = [a + b for a, b in zip(p0, d)]
        bilinear = (_quadric(*shifted) - _quadric(*p0) - qd) / 2
        t = -2 * bilinear / qd
        if t == 0:
            continue
        l1, l2, l3, n3 = (a + t * b for a, b in zip(p0, d))
        if l1 == 0:
            continue
        alpha = 2 * l3 / l1
        beta = (l3 * l3 - l2 * n3 - l1 * l2) / l1
        c3 = n3 * n3 - l1 * l1 + l2 * l3
        coeff = alpha * beta + 2 * l2 * alpha - l1 - n3
        rhs = -(beta * beta + 2 * l2 * beta - l3 * n3 + alpha * c3)
        if coeff == 0:
            continue
        n2 = rhs / coeff
        n1 = alpha * n2 + beta
        spec = ReducedSpec((l1, l2, l3), (n1, n2, n3))
        if all(x == 0 for x in reduced_jacobi_residual(spec)):
            return spec
    raise RuntimeError("no valid spec found; increase max_tries")


# ----------------------------------------------------------------------------
# scanner for the invariance variety
# ----------------------------------------------------------------------------

def _quadratic_forms() -> np.ndarray:
    """Symmetric 6x6 matrices ``M_e`` with ``residual_e(x) = x^T M_e x``, by polarization."""
    def residuals(x):
        s = ReducedSpec(x[:3], x[3:])
        return reduced_jacobi_residual(s) + invariance_residual(s)

    basis = [[Fraction(int(i == j)) for j in range(6)] for i in range(6)]
    diag = [residuals(b) for b in basis]
    M = np.zeros((5, 6, 6))
    for a in range(6):
        for b in range(6):
            if a == b:
                vals = diag[a]
            else:
                both = residuals([x + y for x, y in zip(basis[a], basis[b])])
                vals = tuple((u - v - w) / 2 for u, v, w in zip(both, diag[a], diag[b]))
            for e in range(5):
                M[e, a, b] = float(vals[e])
    return M


_FORMS = None


def _forms():
    global _FORMS
    if _FORMS is None:
        _FORMS = _quadratic_forms()
    return _FORMS


def _system(x):
    M = _forms()
    return np.einsum("eab,a,b->e", M, x, x)


def _system_jac(x):
    return 2 * np.einsum("eab,b->ea", _forms(), x)


_FAMILY_CONDITIONS = {
    # rows of linear conditions on (l1, l2, l3, n1, n2, n3)
    "A": [(0, 0, 1, 0, 0, 0), (0, 0, 0, 1, 0, 0), (1, 0, 0, 0, 0, 1)],
    "B": [(1, 1, 1, 0, 0, 0), (1, 1, 0, 1, 0, 0), (-1, 0, 0, 0, 1, 0), (0, -1, 0, 0, 0, 1)],
    "C": [(1, 1, 1, 0, 0, 0), (-1, 0, 0, 1, 0, 0), (0, -1, 0, 0, 1, 0), (1, 1, 0, 0, 0, 1)],
}


def tag_family(x, tol: float = 1e-6) -> str:
    """Which case family contains the (scale-free) point ``x``."""
    x = np.asarray(x, dtype=float)
    scale = max(np.max(np.abs(x)), 1e-300)
    for name, rows in _FAMILY_CONDITIONS.items():
        if np.max(np.abs(np.asarray(rows, dtype=float) @ x)) / scale <= tol:
            return name
    return "outside known cases"


def _normalize(x) -> np.ndarray:
    """Scale so the largest-magnitude entry is exactly +1."""
    x = np.asarray(x, dtype=float)
    return x / x[np.argmax(np.abs(x))]


def _rationalize(x, max_den: int = 1000, tol: float = 1e-9):
    vals = []
    for v in x:
        q = Fraction(float(v)).limit_denominator(max_den)
        if abs(float(q) - v) > tol:
            return None
        vals.append(q)
    return ReducedSpec(vals[:3], vals[3:])


@dataclass(frozen=True)
class ScanSolution:
    values: tuple  # normalized (lam1, lam2, lam3, nu1, nu2, nu3)
    residual: float  # max |residual| of the five equations at ``values``
    family: str
    exact: ReducedSpec | None  # rationalized point, if one was found
    exact_zero: bool | None  # both systems vanish exactly at ``exact``
    hits: int  # number of starts that landed here


@dataclass(frozen=True)
class StartOutcome:
    start: tuple
    end: tuple
    moved: float
    residual: float

    @property
    def fixed(self) -> bool:
        """The start came back as a solution, up to the 6-decimal dedup resolution."""
        a, b = _normalize(self.start), _normalize(self.end)
        return self.residual <= 1e-10 and float(np.max(np.abs(a - b))) <= 1e-6


@dataclass(frozen=True)
class ScanResult:
    solutions: tuple
    seeded: tuple  # outcomes for user-supplied starts, in order
    trials: int

    def __iter__(self):
        return iter(self.solutions)

    def __len__(self):
        return len(self.solutions)


def _solve_from(x0):
    from scipy.optimize import least_squares

    def fun(x):
        return np.concatenate([_system(x), [x @ x - 1.0]])

    def jac(x):
        return np.vstack([_system_jac(x), 2 * x])

    sol = least_squares(fun, x0, jac=jac, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15,
                        max_nfev=200)
    return sol.x


def scan_invariance_variety(seed: int = 1, trials: int = 1000, threshold: float = 1e-10,
                            starts=None) -> ScanResult:
    """Multi-start least squares on the reduced Jacobi and invariance systems.

    Both systems are homogeneous quadratics, so the solver works on the unit
    sphere (a sixth residual ``|x|^2 - 1``).  Converged points are normalized
    so their largest entry is +1, rounded to 6 decimals to merge duplicates,
    tagged with a case family and, when they rationalize with denominator at
    most 1000, re-verified exactly.
    """
    if trials < 0:
        raise ValueError("trials must be non-negative")
    rng = np.random.default_rng(seed)
    found = {}
    seeded = []

    def record(x):
        if not np.all(np.isfinite(x)):
            return float("inf")
        y = _normalize(x)
        res = float(np.max(np.abs(_system(y))))
        if res > threshold:
            return res
        key = tuple(np.round(y, 6) + 0.0)
        if key in found:
            found[key]["hits"] += 1
        else:
            found[key] = {"x": y, "hits": 1}
        return res

    for s in starts or ():
        x0 = np.asarray([float(v) for v in (s.constants() if isinstance(s, ReducedSpec) else s)])
        x0 = x0 / np.linalg.norm(x0)
        x = _solve_from(x0)
        res = record(x)
        seeded.append(StartOutcome(tuple(x0), tuple(x), float(np.linalg.norm(x - x0)), res))

    for _ in range(trials):
        x0 = rng.standard_normal(6)
        record(_solve_from(x0 / np.linalg.norm(x0)))

    solutions = []
    for key in sorted(found):
        y = found[key]["x"]
        exact = _rationalize(y)
        exact_zero = None
        if exact is not None:
            exact_zero = all(v == 0 for v in reduced_jacobi_residual(exact) + invariance_residual(exact))
        solutions.append(ScanSolution(tuple(float(v) for v in y), float(np.max(np.abs(_system(y)))),
                                      tag_family(y), exact, exact_zero, found[key]["hits"]))
    return ScanResult(tuple(solutions), tuple(seeded), trials)
