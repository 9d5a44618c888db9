import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from circulant_geometry.expr import (
    BinOp, ExprDomainError, Func, MalformedNumberError, Neg, Num, ParseError, Pow, UnknownIdentifierError,
    Var, eval_jet2, eval_value, is_constant, parse, to_source,
)


def test_precedence_and_unary_minus():
    assert parse("1+2*x1") == BinOp("+", Num(1.0), BinOp("*", Num(2.0), Var(0)))
    # unary minus binds tighter than ^
    assert parse("-x1^2") == Pow(Neg(Var(0)), 2)
    assert eval_value(parse("-x1^2"), (3, 0, 0)) == 9.0
    assert eval_value(parse("2-3-4"), (0, 0, 0)) == -5.0
    assert eval_value(parse("8/4/2"), (0, 0, 0)) == 1.0


def test_function_calls_and_numbers():
    e = parse("sqrt(x1) + exp(0.5e1 * x2) - log(x3)")
    p = (4.0, 0.1, math.e)
    assert eval_value(e, p) == pytest.approx(2 + math.exp(0.5) - 1)
    assert isinstance(parse("sin(x1)"), Func)


@pytest.mark.parametrize("src, offset", [("x1 +* x2", 4), ("(x1", 3), ("x1 ^ 1.5", 5), ("", 0)])
def test_parse_error_offsets(src, offset):
    with pytest.raises(ParseError) as info:
        parse(src)
    assert info.value.offset == offset


def test_unknown_identifier_reports_name_and_offset():
    with pytest.raises(UnknownIdentifierError) as info:
        parse("x1 + tan(x2)")
    assert info.value.name == "tan"
    assert info.value.offset == 5


def test_malformed_number():
    with pytest.raises(MalformedNumberError):
        parse("1.2.3")


def test_offsets_are_bytes():
    # the non-ASCII character takes two bytes in UTF-8
    with pytest.raises(ParseError) as info:
        parse("x1 + é")
    assert info.value.offset == 5


def test_domain_errors_name_the_subexpression():
    with pytest.raises(ExprDomainError) as info:
        eval_jet2(parse("1 + log(x1 - 1)"), (0.5, 0, 0))
    assert "log" in str(info.value)
    with pytest.raises(ExprDomainError):
        eval_jet2(parse("sqrt(x2)"), (1, -1, 0))
    with pytest.raises(ExprDomainError):
        eval_jet2(parse("1/(x1-x1)"), (1, 1, 1))


def test_is_constant():
    assert is_constant(parse("2*exp(3)^2"))
    assert not is_constant(parse("2 + 0*x3"))


def test_jet_of_polynomial_is_exact():
    j = eval_jet2(parse("2+x1^2*x2 + 3*x2*x3"), (1.0, 2.0, -1.0))
    assert j.value == 2 + 2 - 6
    np.testing.assert_array_equal(j.grad, [4.0, -2.0, 6.0])
    np.testing.assert_array_equal(j.hess, [[4, 2, 0], [2, 0, 3], [0, 3, 0]])


def test_jet_of_transcendental():
    j = eval_jet2(parse("exp(x1)*sin(x2)"), (0.3, 0.7, 0.0))
    e, s, c = math.exp(0.3), math.sin(0.7), math.cos(0.7)
    np.testing.assert_allclose(j.grad, [e * s, e * c, 0], rtol=1e-15)
    np.testing.assert_allclose(j.hess, [[e * s, e * c, 0], [e * c, -e * s, 0], [0, 0, 0]], rtol=1e-15)


# ---------------------------------------------------------------- round trip

_leaf = st.one_of(st.sampled_from([Var(0), Var(1), Var(2)]),
                  st.floats(0, 5, allow_nan=False).map(lambda v: Num(abs(float(v)))))


def _grow(children):
    return st.one_of(
        children.map(Neg),
        st.tuples(st.sampled_from("+-*/"), children, children).map(lambda t: BinOp(*t)),
        st.tuples(children, st.integers(0, 4)).map(lambda t: Pow(*t)),
        st.tuples(st.sampled_from(["sin", "cos", "exp"]), children).map(lambda t: Func(*t)),
    )


expressions = st.recursive(_leaf, _grow, max_leaves=8)


@settings(max_examples=150, deadline=None)
@given(expressions)
def test_round_trip(e):
    assert parse(to_source(e)) == e


# ---------------------------------------------------------------- finite differences

_POOL = ["2+x1^2", "3+sin(x1)*x2", "1+0.1*x3^2", "2*exp(0.3*(x1+x2+x3))", "0.5*exp(0.2*x1)",
         "x1*x2*x3 + cos(x2)", "sqrt(1+x1^2+x2^2)", "log(2+x1*x2) - x3^3", "(1+x1)/(2+x2^2)",
         "exp(sin(x1*x3))", "(x1+x2)^4 / 10", "cos(x1)*cos(x2)*cos(x3)"]


def fd_jet(e, p, h=1e-4):
    """Central differences of the plain evaluator, O(h^2) accurate."""
    f = lambda q: eval_value(e, q)  # noqa: E731
    p = np.asarray(p, dtype=float)
    grad, hess = np.zeros(3), np.zeros((3, 3))
    I = np.eye(3)
    for i in range(3):
        grad[i] = (f(p + h * I[i]) - f(p - h * I[i])) / (2 * h)
        for j in range(3):
            hess[i, j] = (f(p + h * I[i] + h * I[j]) - f(p + h * I[i] - h * I[j])
                          - f(p - h * I[i] + h * I[j]) + f(p - h * I[i] - h * I[j])) / (4 * h * h)
    return grad, hess


def relative_error(a, b):
    scale = max(1.0, float(np.max(np.abs(b))))
    return float(np.max(np.abs(a - b))) / scale


def test_jets_against_finite_differences():
    rng = random.Random(2024)
    worst = 0.0
    for _ in range(200):
        e = parse(rng.choice(_POOL))
        p = tuple(rng.uniform(0.1, 2.0) for _ in range(3))
        j = eval_jet2(e, p)
        grad, hess = fd_jet(e, p)
        assert j.value == pytest.approx(eval_value(e, p), rel=1e-13)
        worst = max(worst, relative_error(j.grad, grad), relative_error(j.hess, hess))
    assert worst <= 1e-5
