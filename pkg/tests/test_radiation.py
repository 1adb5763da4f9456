import math

import numpy
import pytest
from numpy.testing import assert_allclose

from csskit import solutions
from csskit.cases import CssType
from csskit.errors import DomainError
from csskit.generate import make_random_model
from csskit.metrics import contravariant_metric
from csskit.radiation import (conformal_diagnostic, energy_density, invariants, radiation_at,
                              stress_energy, wave_covector)
from csskit.verify import eikonal_residual

from tests.models import ALL_CASES, CASE_IDS, minkowski_model, random_model

POINTS = [(0.0, 0.0, 0.0, 0.0), (0.1, 0.2, 0.0, 0.0), (-0.3, 0.4, 0.25, -0.1)]


def test_flat_plane_wave():
    model = minkowski_model()
    assert_allclose(wave_covector(model, (0.1, 0.2, 0.0, 0.0)), [0.5, 0.3, 0.4, 0.0])
    assert_allclose(invariants(model, (0.1, 0.2, 0.0, 0.0)), [0.26, 0.08, 0.0], atol=1e-10)
    assert energy_density(model, (0.0, 0.0, 0.0, 0.0)) == pytest.approx(2.0)


def test_stress_energy_is_eps_l_l():
    model = minkowski_model()
    field = radiation_at(model, POINTS[2])
    assert_allclose(field.T, field.eps * numpy.outer(field.L, field.L))
    assert_allclose(stress_energy(model, POINTS[2]), field.T)


def test_l0_squares_to_minus_q():
    model = minkowski_model()
    q = solutions.t30_quadratic(model, 0.0)
    assert q < 0
    assert wave_covector(model, POINTS[0])[0] ** 2 == pytest.approx(-q)
    assert eikonal_residual(model, POINTS[1]) < 1e-12


def _norm(ginv, l0_squared, covector):
    """g^ij L_i L_j of a type (3.0) covector whose L0^2 is given separately."""
    spatial = covector[1:].dot(ginv[1:, 1:]).dot(covector[1:])
    return ginv[0, 0] * l0_squared + spatial


def test_printed_radical_breaks_the_norm_condition():
    model = make_random_model(CssType.T30, 1, seed=3)
    for t in numpy.linspace(-0.5, 0.5, 11):
        x = (float(t), 0.1, -0.2, 0.0)
        ginv = contravariant_metric(model, x)
        q = solutions.t30_quadratic(model, x[0])
        covector = wave_covector(model, x)
        scale = numpy.abs(ginv).max() * numpy.abs(covector).max() ** 2
        # the spatial part contributes Q / Delta, so only L0^2 = -Q is null
        assert abs(_norm(ginv, covector[0] ** 2, covector)) < 1e-12 * scale
        printed = _norm(ginv, q, covector)
        assert printed == pytest.approx(2 * q * ginv[0, 0])
        assert abs(printed) > 1e-3 * scale


def test_printed_radical_is_not_null_where_it_is_real():
    # a positive block makes Q > 0: sqrt(Q) is real but the covector is not null
    model = minkowski_model(functions={'a0': '1', 'b0': '0', 'c0': '0', 'd0': '1',
                                       'e0': '0', 'f0': '1'})
    x = POINTS[0]
    q = solutions.t30_quadratic(model, x[0])
    assert q == pytest.approx(0.25)
    printed = numpy.array([math.sqrt(q), 0.3, 0.4, 0.0])
    ginv = contravariant_metric(model, x)
    assert printed.dot(ginv).dot(printed) == pytest.approx(2 * q)
    with pytest.raises(DomainError):
        wave_covector(model, x)


def test_flip_changes_the_radical_only():
    model = minkowski_model(flips=[-1, -1, 1, 1])
    assert_allclose(wave_covector(model, POINTS[0]), [-0.5, 0.3, 0.4, 0.0])
    assert eikonal_residual(model, POINTS[1]) < 1e-12


@pytest.mark.parametrize('scale', [0.5, 2.0, 10.0])
def test_conformal_scaling(scale):
    flat = minkowski_model()
    scaled = minkowski_model(delta=repr(scale))
    for x in POINTS:
        assert_allclose(wave_covector(scaled, x), wave_covector(flat, x))
        # eps ~ |Delta| sqrt|det G / Delta^4|
        assert energy_density(scaled, x) == pytest.approx(energy_density(flat, x) / scale)
        assert conformal_diagnostic(scaled, x) == pytest.approx(conformal_diagnostic(flat, x))


def test_diagnostic_independent_of_varying_delta():
    flat = minkowski_model()
    curved = minkowski_model(delta='1.5 + 0.3*sin(x0 + x2)')
    for x in POINTS:
        assert conformal_diagnostic(curved, x) == pytest.approx(conformal_diagnostic(flat, x))
    f = 1.0 + 0.1 * 0.26 ** 2 + 0.05 * 0.08
    assert conformal_diagnostic(flat, POINTS[1]) == pytest.approx(math.log(f * f / 0.25))


def test_diagnostic_undefined_for_vanishing_eps():
    model = minkowski_model(profile='0*X')
    assert energy_density(model, POINTS[0]) == 0.0
    assert conformal_diagnostic(model, POINTS[0]) is None


def test_perturbation_multiplies_eps_and_shifts_l():
    model = minkowski_model(perturbation={'eps_factor': '1 + x0',
                                          'covector_shift': [0.1, 0.0, 0.0, 0.0]})
    flat = minkowski_model()
    x = (0.2, 0.0, 0.0, 0.0)
    assert energy_density(model, x) == pytest.approx(1.2 * energy_density(flat, x))
    assert_allclose(wave_covector(model, x), wave_covector(flat, x) + [0.1, 0.0, 0.0, 0.0])


def test_positive_determinant_rejected():
    # a (2,2) block is not Lorentzian even where the radicand is fine
    model = minkowski_model(functions={'a0': '-1', 'b0': '0', 'c0': '0', 'd0': '1',
                                       'e0': '0', 'f0': '-1'},
                            constants={'alpha': 0.3, 'beta': 0.0, 'gamma': 0.0})
    with pytest.raises(DomainError):
        energy_density(model, POINTS[0])


SAMPLE = (0.1, -0.2, 0.15, 0.05)
ELSEWHERE = (-0.3, 0.25, -0.1, 0.2)


@pytest.mark.parametrize('css_type,case_id', ALL_CASES, ids=CASE_IDS)
def test_each_component_depends_on_its_own_coordinate(css_type, case_id):
    model = random_model(css_type, case_id)
    covector = wave_covector(model, SAMPLE)
    for i in range(4):
        y = list(ELSEWHERE)
        y[i] = SAMPLE[i]
        assert wave_covector(model, y)[i] == covector[i]


def _coordinate_arguments(model):
    return set(int(name[1]) for name in model.case.arguments if name.startswith('x'))


@pytest.mark.parametrize('css_type,case_id', ALL_CASES, ids=CASE_IDS)
def test_moving_x_ref_shifts_the_invariants(css_type, case_id):
    model = random_model(css_type, case_id)
    moved = model.replace(x_ref=(0.2, -0.1, 0.15, -0.25))
    # the shift may only depend on coordinates that are themselves arguments of F
    held = _coordinate_arguments(model)
    y = tuple(SAMPLE[i] if i in held else ELSEWHERE[i] for i in range(4))
    shift_here = numpy.subtract(invariants(moved, SAMPLE), invariants(model, SAMPLE))
    shift_there = numpy.subtract(invariants(moved, y), invariants(model, y))
    assert_allclose(shift_here, shift_there, atol=1e-7)
