import numpy
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from csskit.cases import REGISTRY, CssType, cases_of, get_case, required_functions
from csskit.errors import ConfigError, SingularMatrix
from csskit.funcspec import ScalarFn4D
from csskit.metrics import (build_metric, signature, stackel_matrix, stackel_v3, stackel_v4,
                            validate_constraints)

from tests.models import ALL_CASES, CASE_IDS, minkowski_model, random_model

ETA = numpy.diag([1.0, -1.0, -1.0, -1.0])

coefficient = st.floats(min_value=-5, max_value=5)


def test_registry_has_every_case():
    counts = dict((t, len(cases_of(t))) for t in CssType)
    assert counts == {CssType.T30: 3, CssType.T31: 3, CssType.T20: 3, CssType.T21: 4,
                      CssType.T10: 3, CssType.T11: 3, CssType.T00: 3}
    assert len(REGISTRY) == 22
    assert required_functions(get_case(CssType.T21, 4)) == (
        'a0', 'a1', 'b0', 'b1', 'c0', 'c1', 'f1', 'L1')
    assert CssType.from_label('2.1') is CssType.T21
    with pytest.raises(ConfigError):
        get_case(CssType.T30, 4)
    with pytest.raises(ConfigError):
        CssType.from_label('4.0')


@settings(max_examples=10000, deadline=None)
@given(st.lists(coefficient, min_size=8, max_size=8))
def test_stackel_v4_identities(values):
    a, b = values[:4], values[4:]
    v = stackel_v4(a, b)
    size_a = max(abs(x) for x in a)
    size_b = max(abs(x) for x in b)
    # relative to the largest product the identity sums; the floor covers subnormals
    assert abs(sum(v)) <= 1e-12 * size_a * size_b + 1e-300
    assert abs(sum(ai * vi for ai, vi in zip(a, v))) <= 1e-12 * size_a ** 2 * size_b + 1e-300
    assert abs(sum(bi * vi for bi, vi in zip(b, v))) <= 1e-12 * size_a * size_b ** 2 + 1e-300


@given(coefficient, coefficient, coefficient)
def test_stackel_v3_sums_to_zero(t1, t2, t3):
    assert sum(stackel_v3(t1, t2, t3)) == pytest.approx(0.0, abs=1e-12)


def test_flat_metric():
    model = minkowski_model()
    metric = build_metric(model, (0.1, 0.2, -0.3, 0.0))
    assert_allclose(metric.contravariant, ETA)
    assert_allclose(metric.covariant, ETA)
    assert metric.det == pytest.approx(-1.0)
    assert signature(metric.contravariant) == (1, 3)


def test_conformal_factor_divides_the_stackel_block():
    model = minkowski_model(delta='2 + x1')
    x = (0.0, 0.5, 0.0, 0.0)
    assert_allclose(build_metric(model, x).contravariant, stackel_matrix(model, x) / 2.5)
    with pytest.raises(SingularMatrix):
        build_metric(minkowski_model(delta='x1'), (0.0, 0.0, 0.0, 0.0))


def test_valid_model_has_no_violations():
    assert validate_constraints(minkowski_model()) == []


def test_wrong_signature_is_reported():
    model = minkowski_model(functions={'a0': '1', 'b0': '0', 'c0': '0', 'd0': '1',
                                       'e0': '0', 'f0': '1'})
    names = [v.constraint for v in validate_constraints(model)]
    assert 'signature lorentz' in names
    # L0^2 = -Q has no real root once the block is positive
    assert 'radicands nonnegative and denominators nonvanishing' in names


def test_case_constraint_is_reported():
    # Q = -(alpha^2 + beta^2 + gamma^2) never vanishes on a flat block
    model = minkowski_model(case=2, constants={'alpha': 0.3, 'beta': 0.4, 'gamma': 0.5},
                            profile='1 + Y*Z')
    violations = validate_constraints(model)
    assert [v.constraint for v in violations] == [get_case(CssType.T30, 2).constraints[0]]
    assert violations[0].magnitude == pytest.approx(0.5)


def test_constraint_holding_on_flat_block():
    model = minkowski_model(case=3, constants={'alpha': 0.0, 'beta': 0.0, 'gamma': 0.0},
                            profile='1 + x0^2')
    assert validate_constraints(model) == []


def test_validation_grid_checked():
    with pytest.raises(ValueError):
        validate_constraints(minkowski_model(), grid_n=1)


SAMPLE_POINTS = [(0.0, 0.0, 0.0, 0.0), (0.1, -0.2, 0.15, 0.05), (-0.3, 0.25, -0.1, 0.2)]


@pytest.mark.parametrize('css_type,case_id', ALL_CASES, ids=CASE_IDS)
def test_covariant_metric_inverts_contravariant(css_type, case_id):
    model = random_model(css_type, case_id)
    for x in SAMPLE_POINTS:
        metric = build_metric(model, x)
        assert_allclose(metric.contravariant.dot(metric.covariant), numpy.eye(4), atol=1e-10)


@pytest.mark.parametrize('scale', [0.5, 3.0])
@pytest.mark.parametrize('css_type,case_id', ALL_CASES, ids=CASE_IDS)
def test_scaling_delta_scales_the_inverse_metric(css_type, case_id, scale):
    model = random_model(css_type, case_id)
    scaled = model.replace(delta=ScalarFn4D.parse('%r*(%s)' % (scale, model.delta.source),
                                                  model.box))
    for x in SAMPLE_POINTS:
        metric = build_metric(model, x)
        rescaled = build_metric(scaled, x)
        assert_allclose(rescaled.contravariant, metric.contravariant / scale, rtol=1e-12)
        assert_allclose(rescaled.covariant, metric.covariant * scale, rtol=1e-9, atol=1e-12)


def test_signature_must_hold_across_the_box():
    # Delta changes sign between grid lines, so no sampled point is degenerate
    model = minkowski_model(delta='x1 + 0.1')
    names = [v.constraint for v in validate_constraints(model)]
    assert names == ['signature lorentz']
