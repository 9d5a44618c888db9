"""Frozen values below come from an independent symbolic computation
(differentiate g, build Christoffel symbols from the textbook formula,
take F as the covariant derivative of gt) done once with exact rationals."""

from fractions import Fraction as Fr

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from circulant_geometry import tolerances as tol
from circulant_geometry.manifold import (
    GuardViolation, MetricField, check_F_identity, check_tilde_g_identities, frame_at,
    metricity_residual, sample_points,
)

ORACLE_FIELD = ("2+x1^2", "1+x2*x3/4")
ORACLE_POINT = (0.5, 1.0, 1 / 3)

ORACLE_GAMMA = [
    [[Fr(120, 371), Fr(-65, 742), Fr(-13, 106)], [Fr(-65, 742), Fr(-213, 742), Fr(40, 371)],
     [Fr(-13, 106), Fr(40, 371), Fr(-3, 14)]],
    [[Fr(-39, 371), Fr(253, 742), Fr(-19, 371)], [Fr(253, 742), Fr(26, 371), Fr(-13, 371)],
     [Fr(-19, 371), Fr(-13, 371), Fr(3, 14)]],
    [[Fr(-39, 371), Fr(-59, 371), Fr(227, 742)], [Fr(-59, 371), Fr(15, 106), Fr(-13, 371)],
     [Fr(227, 742), Fr(-13, 371), Fr(0)]],
]
ORACLE_F = {(0, 0, 0): Fr(0), (0, 1, 2): Fr(0), (1, 0, 0): Fr(-2, 3), (1, 2, 2): Fr(-1, 6),
            (2, 1, 2): Fr(1, 3)}
ORACLE_THETA = [Fr(156, 371), Fr(261, 371), Fr(219, 371)]
ORACLE_THETA_STAR = [Fr(-162, 371), Fr(-57, 371), Fr(-99, 371)]


def as_float(a):
    return np.array(a, dtype=float)


@pytest.fixture(scope="module")
def oracle_frame():
    return frame_at(MetricField.parse(*ORACLE_FIELD), ORACLE_POINT)


def test_christoffel_matches_oracle(oracle_frame):
    np.testing.assert_allclose(oracle_frame.gamma, as_float(ORACLE_GAMMA), atol=1e-14)


def test_fundamental_tensor_matches_oracle(oracle_frame):
    for idx, value in ORACLE_F.items():
        assert oracle_frame.F[idx] == pytest.approx(float(value), abs=1e-14)


def test_lee_forms_match_oracle(oracle_frame):
    np.testing.assert_allclose(oracle_frame.theta, as_float(ORACLE_THETA), atol=1e-14)
    np.testing.assert_allclose(oracle_frame.theta_star, as_float(ORACLE_THETA_STAR), atol=1e-14)


def test_metric_matrices(oracle_frame):
    A, B = 2.25, 1 + 1 / 12
    np.testing.assert_allclose(oracle_frame.g, [[A, B, B], [B, A, B], [B, B, A]])
    np.testing.assert_allclose(oracle_frame.g_tilde, [[2 * B, A + B, A + B], [A + B, 2 * B, A + B],
                                                      [A + B, A + B, 2 * B]])
    np.testing.assert_allclose(oracle_frame.g @ oracle_frame.g_inv, np.eye(3), atol=1e-15)
    np.testing.assert_allclose(oracle_frame.g_tilde @ oracle_frame.g_tilde_inv, np.eye(3), atol=1e-15)


def test_worked_example_at_origin():
    fr = frame_at(MetricField.parse("2+x1", "1"), (0, 0, 0))
    # 1-based F_111 = 0 and F_211 = -1
    assert fr.F[0, 0, 0] == pytest.approx(0, abs=1e-15)
    assert fr.F[1, 0, 0] == pytest.approx(-1, abs=1e-15)
    np.testing.assert_allclose(fr.theta, [0.75, 1.125, 1.125], atol=1e-15)


def test_constant_metric_has_vanishing_F():
    fr = frame_at(MetricField.parse("5", "2"), (0.3, 0.1, 0.9))
    assert np.max(np.abs(fr.F)) == 0
    assert np.max(np.abs(fr.gamma)) == 0


def test_every_closed_form_agrees(oracle_frame):
    for name, residual in oracle_frame.crosscheck.items():
        assert residual <= tol.EXACT, name


def test_guard():
    with pytest.raises(GuardViolation):
        frame_at(MetricField.parse("1", "2"), (0, 0, 0))
    with pytest.raises(GuardViolation):
        frame_at(MetricField.parse("1", "-0.1"), (0, 0, 0))


def test_sampling_is_seeded_and_respects_guard():
    field = MetricField.parse("1+x1", "0.5*x2")
    a = sample_points(field, 20, seed=7)
    assert a == sample_points(field, 20, seed=7)
    assert a != sample_points(field, 20, seed=8)
    for p in a:
        assert 1 + p[0] > 0.5 * p[1] > 0


coeff = st.floats(-0.5, 0.5, allow_nan=False)


@settings(max_examples=60, deadline=None)
@given(st.tuples(coeff, coeff, coeff), st.tuples(coeff, coeff, coeff),
       st.tuples(st.floats(0.1, 2), st.floats(0.1, 2), st.floats(0.1, 2)))
def test_identities_on_random_polynomial_fields(a, b, p):
    A = f"3 + {a[0]}*x1^2 + {a[1]}*x1*x2 + {a[2]}*sin(x3)"
    B = f"1 + {b[0]}*x2 + {b[1]}*x3^2*x1/4 + {b[2]}*cos(x1*x2)/4"
    fr = frame_at(MetricField.parse(A, B), p)
    assert check_F_identity(fr) <= tol.JET
    assert check_tilde_g_identities(fr) <= tol.LINALG
    assert metricity_residual(fr) <= tol.JET
    # F is symmetric in its last two slots
    np.testing.assert_allclose(fr.F, fr.F.transpose(0, 2, 1), atol=1e-12)
