import math
import random
import warnings

import numpy
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from csskit.errors import QuadratureNonConvergence, SingularMatrix
from csskit.numerics import (CumulativeIntegrator, central_diff, convergence_order,
                             cumulative_integral, five_point_diff, invert_sym4, quadrature_spec,
                             rk4_step, sym4, sym4_components)


def test_cumulative_integral():
    assert cumulative_integral(math.sin, 0.0, math.pi) == pytest.approx(2.0, abs=1e-9)
    assert cumulative_integral(math.exp, 1.0, 0.0) == pytest.approx(1.0 - math.e, abs=1e-9)
    assert cumulative_integral(math.cos, 0.3, 0.3) == 0.0


def test_quadrature_non_convergence():
    spec = quadrature_spec(abs_tol=1e-14, rel_tol=1e-14, max_depth=3)
    with pytest.raises(QuadratureNonConvergence):
        cumulative_integral(math.sin, 0.0, 10.0, spec)


def test_quadrature_spec_checks():
    with pytest.raises(ValueError):
        quadrature_spec(abs_tol=0.0)
    with pytest.raises(ValueError):
        quadrature_spec(max_depth=0)


def test_cell_integrals_match_direct_quadrature():
    integrator = CumulativeIntegrator(cells=16)
    for x in (-0.9, -0.31, 0.0, 0.42, 1.0):
        value = integrator.integral('cos', math.cos, 0.0, x, (-1.0, 1.0))
        assert value == pytest.approx(math.sin(x), abs=1e-9)
    assert len(integrator) > 0


def test_cell_integrals_do_not_depend_on_order():
    xs = [i / 10.0 - 1.0 for i in range(21)]
    shuffled = list(xs)
    random.Random(4).shuffle(shuffled)

    def values(order):
        integrator = CumulativeIntegrator(cells=8)
        return dict((x, integrator.integral('f', math.exp, 0.0, x, (-1.0, 1.0))) for x in order)

    assert values(xs) == values(shuffled)


def test_finite_differences():
    assert central_diff(math.sin, 0.4, 1e-4) == pytest.approx(math.cos(0.4), abs=1e-8)
    assert five_point_diff(math.sin, 0.4, 1e-2) == pytest.approx(math.cos(0.4), abs=1e-9)


def test_convergence_order():
    hs = [1e-1, 5e-2, 2.5e-2]
    assert convergence_order(hs, [3 * h ** 2 for h in hs]) == pytest.approx(2.0)


def test_sym4():
    m = sym4(range(10))
    assert (m == m.T).all()
    assert sym4_components(m) == [float(v) for v in range(10)]
    with pytest.raises(ValueError):
        sym4([1, 2, 3])


def test_invert_sym4():
    eta = numpy.diag([1.0, -1.0, -1.0, -1.0])
    inverse, det = invert_sym4(2.0 * eta)
    assert_allclose(inverse, 0.5 * eta)
    assert det == pytest.approx(-16.0)
    with pytest.raises(SingularMatrix):
        invert_sym4(numpy.diag([1.0, 1.0, 1.0, 0.0]))


def test_rk4_step():
    state = numpy.array([1.0])
    for _ in range(10):
        state = rk4_step(state, lambda y: y, 0.1)
    assert state[0] == pytest.approx(math.e, rel=1e-6)


limits = st.floats(min_value=-2.0, max_value=2.0)


@given(limits, limits, limits)
def test_cumulative_integral_is_additive(a, b, c):
    def f(t):
        return math.exp(math.sin(t)) + t * t

    whole = cumulative_integral(f, a, c)
    assert whole == pytest.approx(cumulative_integral(f, a, b) + cumulative_integral(f, b, c),
                                  abs=1e-8)


@settings(max_examples=200)
@given(st.lists(st.floats(min_value=-2.0, max_value=2.0), min_size=10, max_size=10))
def test_invert_sym4_multiplies_back(components):
    m = sym4(components)
    scale = numpy.linalg.norm(m)
    assume(scale > 0.1)
    assume(numpy.linalg.cond(m) < 1e4)
    assume(abs(numpy.linalg.det(m)) > 1e-6 * scale ** 4)
    inverse, det = invert_sym4(m)
    assert_allclose(m.dot(inverse), numpy.eye(4), atol=1e-9)
    assert det * numpy.linalg.det(inverse) == pytest.approx(1.0, rel=1e-9)


def test_rk4_global_error_is_fourth_order():
    errors = []
    steps = [0.1, 0.05, 0.025]
    for dt in steps:
        state = numpy.array([1.0])
        for _ in range(int(round(1.0 / dt))):
            state = rk4_step(state, lambda y: y, dt)
        errors.append(state[0] - math.e)
    assert 3.8 < convergence_order(steps, errors) < 4.2


def test_difference_quotients_converge_at_their_order():
    steps = [0.1, 0.05, 0.025]
    central = [central_diff(math.sin, 0.4, h) - math.cos(0.4) for h in steps]
    assert 1.9 < convergence_order(steps, central) < 2.1
    wide = [0.4, 0.2, 0.1]
    five_point = [five_point_diff(math.sin, 0.4, h) - math.cos(0.4) for h in wide]
    assert 3.8 < convergence_order(wide, five_point) < 4.2


def test_convergence_order_of_exact_results():
    hs = [0.2, 0.1, 0.05]
    with warnings.catch_warnings():
        warnings.simplefilter('error')
        assert convergence_order(hs, [0.0, 0.0, 0.0]) == float('inf')
        assert convergence_order(hs, [0.0, 3 * 0.1 ** 2, 3 * 0.05 ** 2]) == pytest.approx(2.0)
