# -*- coding: utf-8 -*-
"""
Conformally Stäckel models: the metric of each type at a point, the Stäckel
potentials of the types without enough Killing vectors, and validation of the
degenerate-case constraints.
"""
import itertools
import logging
from collections import namedtuple

import numpy

from . import solutions
from .cases import CONSTANT_NAMES, LORENTZ, NEUTRAL, CssType, get_case, required_functions
from .errors import DomainError, EvalError, QuadratureNonConvergence, SingularMatrix
from .numerics import DEFAULT_QUADRATURE, CumulativeIntegrator, invert_sym4

Perturbation = namedtuple('Perturbation', 'eps_factor covector_shift')
NO_PERTURBATION = Perturbation(None, (0.0, 0.0, 0.0, 0.0))

MetricAtPoint = namedtuple('MetricAtPoint', 'contravariant covariant det')
StackelPotentials = namedtuple('StackelPotentials', 'V Omega')
Violation = namedtuple('Violation', 'constraint location magnitude message')


class CssModel(object):
    """A conformally Stäckel space-time together with one radiation case.

    Args:
        css_type (CssType)
        case_id (int) case number within the type
        functions (dict) name -> ScalarFn1D, the metric functions of the type
            plus the free functions of the case
        delta (ScalarFn4D) conformal factor
        profile (ScalarFn) F over the case's three argument names
        box (list) four (lo, hi) intervals
        x_ref (list) quadrature reference point, defaults to the box centre
        constants (dict) alpha, beta, gamma, sigma, p, q, r; missing ones are 0
        flips (list) +1/-1 per covector component, applied to radicals only
        perturbation (Perturbation) corrections applied after the closed forms
        quadrature (QuadratureSpec)
        name (str) model id used in reports
    """

    def __init__(self, css_type, case_id, functions, delta, profile, box, x_ref=None,
                 constants=None, flips=(1, 1, 1, 1), perturbation=NO_PERTURBATION,
                 quadrature=DEFAULT_QUADRATURE, name=None):
        self.css_type = css_type
        self.case = get_case(css_type, case_id)
        self.case_id = self.case.case_id
        self.functions = dict(functions)
        missing = [k for k in required_functions(self.case) if k not in self.functions]
        if missing:
            raise ValueError('missing metric functions: %s' % ', '.join(missing))
        self.delta = delta
        self.profile = profile
        self.box = tuple((float(lo), float(hi)) for lo, hi in box)
        if x_ref is None:
            x_ref = [(lo + hi) / 2.0 for lo, hi in self.box]
        self.x_ref = tuple(float(v) for v in x_ref)
        self.constants = dict((k, 0.0) for k in CONSTANT_NAMES)
        self.constants.update((k, float(v)) for k, v in (constants or {}).items())
        self.flips = tuple(int(f) for f in flips)
        self.perturbation = perturbation
        self.quadrature = quadrature
        self.name = name
        self.integrals = CumulativeIntegrator(quadrature)

    def __repr__(self):
        return 'CssModel(%s, case %d, %r)' % (self.css_type.label, self.case_id, self.name)

    def fn(self, name):
        return self.functions[name]

    @property
    def alpha(self):
        return self.constants['alpha']

    @property
    def beta(self):
        return self.constants['beta']

    @property
    def gamma(self):
        return self.constants['gamma']

    @property
    def sigma(self):
        return self.constants['sigma']

    @property
    def p(self):
        return self.constants['p']

    @property
    def q(self):
        return self.constants['q']

    @property
    def r(self):
        return self.constants['r']

    @property
    def s(self):
        """Sign of the x1 block of type (2.0)."""
        return self.functions['s'](self.x_ref[1])

    def flip(self, i):
        return self.flips[i]

    def integral(self, key, axis, x, f):
        """Cumulative integral of ``f`` along coordinate ``axis`` from x_ref to x."""
        return self.integrals.integral(key, f, self.x_ref[axis], x[axis], self.box[axis])

    def contains(self, x, margin=0.0):
        return all(lo + margin <= v <= hi - margin for v, (lo, hi) in zip(x, self.box))

    def replace(self, **changes):
        """Copy of the model with some constructor arguments replaced."""
        kwargs = dict(css_type=self.css_type, case_id=self.case_id, functions=self.functions,
                      delta=self.delta, profile=self.profile, box=self.box, x_ref=self.x_ref,
                      constants=self.constants, flips=self.flips,
                      perturbation=self.perturbation, quadrature=self.quadrature,
                      name=self.name)
        kwargs.update(changes)
        return CssModel(**kwargs)


def stackel_v3(t1, t2, t3):
    """Potentials V^1..V^3 of types (1.0) and (1.1)."""
    return (t2 - t3, t3 - t1, t1 - t2)


def stackel_v4(a, b):
    """Potentials V^0..V^3 of type (0.0) from the sequences a_i and b_i.

    Each V^i is the signed cofactor of the (1, a_i, b_i) column, so
    sum V^i = sum a_i V^i = sum b_i V^i = 0 identically.
    """
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return (a1 * (b2 - b3) + a2 * (b3 - b1) + a3 * (b1 - b2),
            a0 * (b3 - b2) + a2 * (b0 - b3) + a3 * (b2 - b0),
            a0 * (b1 - b3) + a1 * (b3 - b0) + a3 * (b0 - b1),
            a0 * (b2 - b1) + a1 * (b0 - b2) + a2 * (b1 - b0))


def stackel_potentials(model, x):
    """V (and Omega for types (1.0)/(1.1)) at a point."""
    f = model.fn
    if model.css_type in (CssType.T10, CssType.T11):
        v = stackel_v3(f('t1')(x[1]), f('t2')(x[2]), f('t3')(x[3]))
        omega = sum(f('omega%d' % mu)(x[mu]) * v[mu - 1] for mu in (1, 2, 3))
        return StackelPotentials(v, omega)
    if model.css_type is CssType.T00:
        a = [f('a%d' % i)(x[i]) for i in range(4)]
        b = [f('b%d' % i)(x[i]) for i in range(4)]
        return StackelPotentials(stackel_v4(a, b), None)
    raise ValueError('type %s has no Stäckel potentials' % model.css_type.label)


def stackel_matrix(model, x):
    """The Stäckel block G^ij at a point; the metric is g^ij = G^ij / Delta."""
    f = model.fn
    t = model.css_type
    g = numpy.zeros((4, 4))
    if t is CssType.T30:
        a0, b0, c0, d0, e0, f0 = [f(k)(x[0]) for k in ('a0', 'b0', 'c0', 'd0', 'e0', 'f0')]
        g[0, 0] = 1.0
        g[1:, 1:] = [[a0, b0, c0], [b0, d0, e0], [c0, e0, f0]]
    elif t is CssType.T31:
        a0, b0, c0, d0, f0 = [f(k)(x[0]) for k in ('a0', 'b0', 'c0', 'd0', 'f0')]
        g[0, 1] = g[1, 0] = 1.0
        g[0, 2] = g[2, 0] = a0
        g[0, 3] = g[3, 0] = b0
        g[2:, 2:] = [[c0, f0], [f0, d0]]
    elif t is CssType.T20:
        a, b, c = solutions.t20_block(model, x)
        g[0, 0] = 1.0
        g[1, 1] = model.s
        g[2:, 2:] = [[a, b], [b, c]]
    elif t is CssType.T21:
        a, b, c = solutions.t20_block(model, x)
        f1 = f('f1')(x[1])
        g[0, 0] = 1.0
        g[1, 2] = g[2, 1] = f1
        g[1, 3] = g[3, 1] = 1.0
        g[2:, 2:] = [[a, b], [b, c]]
    elif t is CssType.T10:
        v, omega = stackel_potentials(model, x)
        g[numpy.diag_indices(4)] = (omega,) + tuple(v)
    elif t is CssType.T11:
        v, omega = stackel_potentials(model, x)
        g[0, 0] = omega
        g[0, 1] = g[1, 0] = v[0]
        g[2, 2], g[3, 3] = v[1], v[2]
    else:
        v, _ = stackel_potentials(model, x)
        g[numpy.diag_indices(4)] = v
    return g


def contravariant_metric(model, x):
    """g^ij = G^ij / Delta, without inversion."""
    return stackel_matrix(model, x) / model.delta(*x)


def build_metric(model, x):
    """Contravariant and covariant metric and det g^ij at a point.

    Raises:
        SingularMatrix where Delta vanishes or the Stäckel block degenerates
    """
    delta = model.delta(*x)
    if delta == 0.0:
        raise SingularMatrix('conformal factor vanishes at %r' % (tuple(x),))
    contravariant = stackel_matrix(model, x) / delta
    covariant, det = invert_sym4(contravariant)
    return MetricAtPoint(contravariant, covariant, det)


def signature(contravariant):
    """(positive, negative) eigenvalue counts of a symmetric matrix."""
    eigenvalues = numpy.linalg.eigvalsh(contravariant)
    return int((eigenvalues > 0).sum()), int((eigenvalues < 0).sum())


SIGNATURES = {
    LORENTZ: ((1, 3), (3, 1)),
    NEUTRAL: ((2, 2),),
}


# Functional constraints of the degenerate cases, in registry order. Each entry
# is (axes, residual(model, x)); the residual is sampled over the listed axes
# with the other coordinates held at x_ref.

def _t30_flow_first(m, x):
    return solutions.t30_flow(m, x[0])[0]


def _t30_quadratic(m, x):
    return solutions.t30_quadratic(m, x[0])


def _t31_weight(m, x):
    return solutions.t31_transport(m, x[0])[0]


def _t31_quadratic(m, x):
    return solutions.t31_transport(m, x[0])[1]


def _quadratic_minus_gamma(m, x):
    return solutions._quadratic_form(m, 0, x[0]) - m.gamma


def _t20_null_block(m, x):
    return solutions._quadratic_form(m, 0, x[0]) + solutions._quadratic_form(m, 1, x[1])


def _function_value(name, axis):
    return lambda m, x: m.fn(name)(x[axis])


def _t21_linear(m, x):
    a0, b0, c0 = [m.fn(k)(x[0]) for k in ('a0', 'b0', 'c0')]
    al, be = m.alpha, m.beta
    return m.p * (al * a0 + be * b0) + m.q * (al * b0 + be * c0) - m.r


def _omega_relation(mu):
    def residual(m, x):
        return (m.alpha ** 2 * m.fn('omega%d' % mu)(x[mu]) - m.beta * m.fn('t%d' % mu)(x[mu]) -
                m.gamma)
    return residual


def _t11_branch(m, x):
    return (m.p * m.alpha - m.q * m.beta) * m.fn('t3')(x[3])


def _t00_relation(i):
    def residual(m, x):
        return m.alpha * m.fn('a%d' % i)(x[i]) + m.beta * m.fn('b%d' % i)(x[i]) + m.gamma
    return residual


CONSTRAINT_RESIDUALS = {
    (CssType.T30, 2): [((0,), _t30_quadratic)],
    (CssType.T30, 3): [((0,), _t30_flow_first), ((0,), _t30_quadratic)],
    (CssType.T31, 2): [((0,), _t31_weight), ((0,), _t31_quadratic)],
    (CssType.T31, 3): [((0,), _t31_weight), ((0,), _t31_quadratic)],
    (CssType.T20, 2): [((0,), _quadratic_minus_gamma)],
    (CssType.T20, 3): [((0, 1), _t20_null_block)],
    (CssType.T21, 2): [((1,), _function_value('a1', 1)), ((1,), _function_value('f1', 1))],
    (CssType.T21, 3): [((0,), _quadratic_minus_gamma), ((0,), _t21_linear)],
    (CssType.T10, 2): [((1,), _omega_relation(1))],
    (CssType.T10, 3): [((2,), _omega_relation(2)), ((3,), _omega_relation(3))],
    (CssType.T11, 2): [((1,), _function_value('t1', 1))],
    (CssType.T11, 3): [((3,), _omega_relation(3)), ((3,), _t11_branch)],
    (CssType.T00, 2): [((0,), _t00_relation(0))],
    (CssType.T00, 3): [((0,), _t00_relation(0)), ((0, 1), _t00_relation(1))],
}


def _axis_grid(model, axes, grid_n):
    """Points varying over ``axes`` on an evenly spaced grid, others at x_ref."""
    lines = [numpy.linspace(lo, hi, grid_n) if i in axes else [model.x_ref[i]]
             for i, (lo, hi) in enumerate(model.box)]
    return [tuple(float(v) for v in p) for p in itertools.product(*lines)]


class _Worst(object):
    """Keeps the largest magnitude seen for one named check."""

    def __init__(self, constraint):
        self.constraint = constraint
        self.magnitude = 0.0
        self.location = None
        self.message = ''
        self.count = 0

    def record(self, location, magnitude, message=''):
        self.count += 1
        if self.location is None or magnitude > self.magnitude:
            self.location, self.magnitude, self.message = location, magnitude, message

    def violation(self):
        if self.location is None:
            return None
        return Violation(self.constraint, self.location, self.magnitude, self.message)


def validate_constraints(model, grid_n=5, tol=1e-8):
    """Check the case constraints, signature and solution domain on sample grids.

    Args:
        model (CssModel)
        grid_n (int) points per axis, at least 2
        tol (float) absolute tolerance for functional constraints

    Returns: (list) one Violation per failed check, carrying the worst point
    """
    if grid_n < 2:
        raise ValueError('grid_n must be at least 2')
    checks = []

    for name, fn in sorted(model.functions.items()):
        axis = 1 if name == 's' else int(name[-1])
        check = _Worst('%s finite on its interval' % name)
        for t in numpy.linspace(model.box[axis][0], model.box[axis][1], grid_n):
            try:
                fn(float(t))
            except EvalError as e:
                check.record((float(t),), 1.0, str(e))
        checks.append(check)

    if model.css_type is CssType.T20:
        check = _Worst('s = +1 or -1')
        for t in numpy.linspace(model.box[1][0], model.box[1][1], grid_n):
            try:
                off = abs(abs(model.fn('s')(float(t))) - 1.0)
            except EvalError:
                off = 1.0
            if off > tol:
                check.record((float(t),), off)
        checks.append(check)

    residuals = CONSTRAINT_RESIDUALS.get((model.css_type, model.case_id), [])
    for label, (axes, residual) in zip(model.case.constraints, residuals):
        check = _Worst(label)
        for x in _axis_grid(model, axes, grid_n):
            try:
                magnitude = abs(residual(model, x))
            except EvalError as e:
                check.record(x, 1.0, str(e))
                continue
            if magnitude > tol:
                check.record(x, magnitude)
        checks.append(check)

    # the first admissible signature seen fixes the one the whole box must have
    allowed = SIGNATURES[model.case.signature]
    seen = None
    degenerate = _Worst('metric nondegenerate')
    wrong_signature = _Worst('signature %s' % model.case.signature)
    domain = _Worst('radicands nonnegative and denominators nonvanishing')
    for x in _axis_grid(model, (0, 1, 2, 3), grid_n):
        try:
            metric = build_metric(model, x)
        except (SingularMatrix, EvalError) as e:
            degenerate.record(x, 1.0, str(e))
            continue
        counts = signature(metric.contravariant)
        if counts not in allowed:
            wrong_signature.record(x, 1.0, 'eigenvalue signs %r' % (counts,))
        elif seen is None:
            seen = counts
        elif counts != seen:
            wrong_signature.record(x, 1.0, 'eigenvalue signs %r, %r elsewhere' % (counts, seen))
        try:
            solutions.solve(model, x)
        except (DomainError, EvalError, QuadratureNonConvergence) as e:
            domain.record(x, 1.0, str(e))
    checks.extend([degenerate, wrong_signature, domain])

    violations = [v for v in (c.violation() for c in checks) if v is not None]
    for v in violations:
        logging.info('Constraint violated: %s (magnitude %g at %s)',
                     v.constraint, v.magnitude, v.location)
    return violations
