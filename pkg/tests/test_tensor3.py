from fractions import Fraction

import numpy as np
import pytest

from circulant_geometry.tensor3 import (
    SingularMatrixError, apply_q, circulant, circulant_row, det3, invert3, lower_riemann, phi_matrix,
    q_matrix, raise_vector, ricci_from_riemann, s_matrix, trace2,
)


def test_q_is_a_cyclic_shift_of_order_three():
    Q = q_matrix()
    np.testing.assert_array_equal(apply_q([1, 0, 0]), [0, 1, 0])
    np.testing.assert_array_equal(apply_q([0, 0, 1]), [1, 0, 0])
    np.testing.assert_array_equal(np.linalg.matrix_power(Q, 3), np.eye(3))
    assert not np.array_equal(Q, np.eye(3))


def test_phi_and_s():
    Q = q_matrix()
    np.testing.assert_array_equal(phi_matrix(), Q + Q @ Q)
    np.testing.assert_array_equal(s_matrix(), phi_matrix() - np.eye(3))
    np.testing.assert_array_equal(s_matrix() @ s_matrix(), 4 * np.eye(3) - np.ones((3, 3)))


def test_circulant_round_trip():
    m = circulant([3, 1, 2])
    np.testing.assert_array_equal(m, [[3, 1, 2], [2, 3, 1], [1, 2, 3]])
    np.testing.assert_array_equal(circulant_row(m), [3, 1, 2])


def test_exact_inverse():
    m = np.array([[Fraction(2), Fraction(1), Fraction(1)],
                  [Fraction(1), Fraction(2), Fraction(1)],
                  [Fraction(1), Fraction(1), Fraction(2)]], dtype=object)
    inv = invert3(m)
    assert inv[0, 0] == Fraction(3, 4) and inv[0, 1] == Fraction(-1, 4)
    assert det3(m) == 4
    assert all(x == (1 if i == j else 0) for (i, j), x in np.ndenumerate(m.dot(inv)))


def test_singular():
    with pytest.raises(SingularMatrixError):
        invert3(np.ones((3, 3)))


def test_curvature_contractions_on_unit_sphere_pattern():
    # unit curvature in an orthonormal frame; with R[i,j,k,l] = g(R(e_i,e_j)e_k, e_l)
    # the round sphere has R[i,j,j,i] = +1
    g = np.eye(3)
    r_up = np.einsum("li,jk->lkij", g, g) - np.einsum("lj,ik->lkij", g, g)
    R = lower_riemann(r_up, g)
    assert R[0, 1, 1, 0] == 1
    rho = ricci_from_riemann(g, R)
    np.testing.assert_array_equal(rho, 2 * np.eye(3))
    assert trace2(g, rho) == 6
    np.testing.assert_array_equal(raise_vector(g / 2, [2, 4, 6]), [1, 2, 3])
