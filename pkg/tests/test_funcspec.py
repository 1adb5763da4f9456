import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from csskit.errors import EvalError, ExprSyntaxError, UnknownIdentifier
from csskit.funcspec import (Call, Const, ScalarFn, ScalarFn1D, ScalarFn4D, Var, add,
                             differentiate, div, evaluate, mul, parse_expr, power, sub,
                             to_string)

BOX = [(-1.0, 1.0)] * 4


def test_precedence_and_associativity():
    assert evaluate(parse_expr('1 + 2*3', []), {}) == 7.0
    assert evaluate(parse_expr('2^3^2', []), {}) == 2.0 ** 9
    assert evaluate(parse_expr('-2^2', []), {}) == -4.0
    assert evaluate(parse_expr('8/4/2', []), {}) == 1.0


def test_half_integer_power():
    f = ScalarFn1D.parse('x^1.5', 'x0', (0.0, 4.0))
    assert f(4.0) == pytest.approx(8.0)
    with pytest.raises(ExprSyntaxError):
        parse_expr('x^0.3', ['x'])
    with pytest.raises(ExprSyntaxError):
        parse_expr('2^x', ['x'])


def test_syntax_error_offset():
    with pytest.raises(ExprSyntaxError) as e:
        parse_expr('2 +* x', ['x'])
    assert e.value.offset == 2


def test_empty_and_unbalanced():
    with pytest.raises(ExprSyntaxError) as e:
        parse_expr('   ', ['x'])
    assert e.value.offset == 0
    with pytest.raises(ExprSyntaxError):
        parse_expr('(x + 1', ['x'])
    with pytest.raises(ExprSyntaxError):
        parse_expr('x $ 1', ['x'])


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifier) as e:
        parse_expr('x + y', ['x'])
    assert e.value.name == 'y'
    assert e.value.offset == 4


def test_named_functions_and_constants():
    f = ScalarFn.parse('sin(pi*X) + exp(Y) + ln(Z) + sqrt(4)', ('X', 'Y', 'Z'),
                       [(-5, 5)] * 3)
    assert f(0.5, 0.0, 1.0) == pytest.approx(1.0 + 1.0 + 0.0 + 2.0)


def test_evaluation_errors():
    with pytest.raises(EvalError):
        ScalarFn1D.parse('sqrt(x)', 'x1', (-1.0, 1.0))(-0.5)
    with pytest.raises(EvalError):
        ScalarFn1D.parse('ln(x)', 'x1', (-1.0, 1.0))(0.0)
    with pytest.raises(EvalError):
        ScalarFn1D.parse('1/x', 'x1', (-1.0, 1.0))(0.0)
    with pytest.raises(EvalError):
        ScalarFn1D.parse('exp(x)', 'x1', (-1.0, 1.0))(1e6)


def test_plain_x_alias():
    f = ScalarFn1D.parse('x^2 + x2', 'x2', (-1.0, 1.0))
    assert f.variable == 'x2'
    assert f(0.5) == pytest.approx(0.75)
    assert f.source == 'x^2 + x2'


def test_exact_derivatives():
    f = ScalarFn1D.parse('sin(x)*x', 'x0', (-1.0, 1.0))
    assert f.deriv(0.5) == pytest.approx(math.cos(0.5) * 0.5 + math.sin(0.5))
    g = ScalarFn4D.parse('x0*x1^2 + exp(x3)', BOX)
    assert g.derivative('x1')(2.0, 3.0, 0.0, 0.0) == pytest.approx(12.0)
    assert g.derivative('x2').is_constant()


def test_to_string_reparses():
    expr = parse_expr('-x^2/(1 + sqrt(x)) - 3', ['x'])
    again = parse_expr(to_string(expr), ['x'])
    for v in (0.25, 1.0, 2.5):
        assert evaluate(again, {'x': v}) == pytest.approx(evaluate(expr, {'x': v}))


@given(st.floats(min_value=-10, max_value=10))
def test_polynomial_derivative(x):
    expr = differentiate(parse_expr('x^3 - 2*x^2 + 3*x', ['x']), 'x')
    assert evaluate(expr, {'x': x}) == pytest.approx(3 * x * x - 4 * x + 3, abs=1e-9)


def _bounded_trees(depth):
    """Trees in x whose values stay within [-1, 1] for |x| <= 1."""
    leaves = st.one_of(st.just(Var('x')),
                       st.integers(-10, 10).map(lambda k: Const(k / 10.0)))
    if depth == 0:
        return leaves
    sub_tree = _bounded_trees(depth - 1)
    half = Const(0.5)
    two = Const(2.0)
    return st.one_of(
        leaves,
        st.builds(lambda a, b: mul(half, add(a, b)), sub_tree, sub_tree),
        st.builds(lambda a, b: mul(half, sub(a, b)), sub_tree, sub_tree),
        st.builds(mul, sub_tree, sub_tree),
        st.builds(lambda a, b: div(a, add(two, b)), sub_tree, sub_tree),
        st.builds(power, sub_tree, st.sampled_from([2, 3])),
        st.builds(lambda a: Call('neg', a), sub_tree),
        st.builds(lambda f, a: Call(f, a), st.sampled_from(['sin', 'cos']), sub_tree),
        st.builds(lambda a: mul(Const(0.3), Call('exp', a)), sub_tree),
        st.builds(lambda a: mul(half, Call('sqrt', add(two, a))), sub_tree),
        st.builds(lambda a: mul(half, Call('ln', add(two, a))), sub_tree),
    )


trees = _bounded_trees(5)
points = st.floats(min_value=-0.9, max_value=0.9)


@settings(max_examples=300, deadline=None)
@given(trees, points)
def test_derivative_matches_central_difference(expr, x):
    exact = evaluate(differentiate(expr, 'x'), {'x': x})
    h = 1e-6
    estimate = (evaluate(expr, {'x': x + h}) - evaluate(expr, {'x': x - h})) / (2 * h)
    assert exact == pytest.approx(estimate, rel=1e-4, abs=1e-4)


@settings(max_examples=300, deadline=None)
@given(trees, points)
def test_printed_tree_parses_back(expr, x):
    again = parse_expr(to_string(expr), ['x'])
    assert evaluate(again, {'x': x}) == pytest.approx(evaluate(expr, {'x': x}), rel=1e-12,
                                                      abs=1e-15)
