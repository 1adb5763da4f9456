# -*- coding: utf-8 -*-
"""
Seeded random models for every (type, case).

Metric functions are small smooth perturbations of constants chosen so that
the signature, radicands and divisors of the case are safe on the unit box
around the origin. Where a case constrains the metric functions, the
constraint is solved for one function or one constant, so it holds
identically rather than approximately. Candidates are still checked with
validate_constraints and redrawn when a check fails.
"""
import logging

import numpy

from .cases import CssType, get_case
from .errors import GenerationFailure
from .metrics import validate_constraints
from .utils import model_from_config, process_options

BOX = [[-0.5, 0.5]] * 4
X_REF = [0.0, 0.0, 0.0, 0.0]


def _num(v):
    text = repr(float(v))
    return '(%s)' % text if v < 0 else text


def _lin(terms):
    """Source of sum(coef * (expr)) over (coef, expr) pairs."""
    return ' + '.join('%s*(%s)' % (_num(c), e) for c, e in terms if c != 0.0) or '0'


class _Draw(object):
    """Random numbers and expression snippets for one generation attempt."""

    def __init__(self, rng):
        self.rng = rng

    def uniform(self, lo, hi):
        return round(float(self.rng.uniform(lo, hi)), 4)

    def signed(self, lo, hi):
        sign = 1.0 if self.rng.randint(2) else -1.0
        return sign * self.uniform(lo, hi)

    def wiggle(self, base, var, amplitude=0.1):
        """``base`` plus a small polynomial or sinusoidal variation in ``var``."""
        if self.rng.randint(2):
            c1 = self.uniform(-amplitude, amplitude)
            c2 = self.uniform(-amplitude, amplitude)
            return '%s + %s*%s + %s*%s^2' % (_num(base), _num(c1), var, _num(c2), var)
        c = self.uniform(-amplitude, amplitude)
        k = self.uniform(0.5, 2.0)
        phase = self.uniform(0.0, 3.0)
        return '%s + %s*sin(%s*%s + %s)' % (_num(base), _num(c), _num(k), var, _num(phase))

    def delta(self):
        return '1.5 + %s*sin(%s*x0 + %s*x1) + %s*x2*x3' % (
            _num(self.uniform(-0.2, 0.2)), _num(self.uniform(0.5, 1.5)),
            _num(self.uniform(0.5, 1.5)), _num(self.uniform(-0.1, 0.1)))

    def profile(self, names):
        a, b, c = names
        return '1.2 + 0.3*sin(%s*%s + %s*%s) + 0.2*cos(%s*%s)' % (
            _num(self.uniform(0.3, 1.0)), a, _num(self.uniform(0.3, 1.0)), b,
            _num(self.uniform(0.3, 1.0)), c)


# (3.0)

def _t30_indefinite(d, constants):
    """a0, d0 near 1 and f0 solved from Q = 0: the Stäckel block has signs (+, +, -)."""
    al, be, ga = constants['alpha'], constants['beta'], constants['gamma']
    fns = {'a0': d.wiggle(1.0, 'x0'), 'b0': d.wiggle(0.0, 'x0', 0.05),
           'd0': d.wiggle(1.0, 'x0'), 'e0': d.wiggle(0.0, 'x0', 0.05)}
    return fns, al, be, ga


def _t30_case1(d):
    constants = {'alpha': d.signed(0.3, 1.0), 'beta': d.uniform(-0.6, 0.6),
                 'gamma': d.uniform(-0.6, 0.6)}
    fns = {'a0': d.wiggle(-1.0, 'x0'), 'b0': d.wiggle(0.0, 'x0', 0.05),
           'c0': d.wiggle(0.0, 'x0', 0.05), 'd0': d.wiggle(-1.0, 'x0'),
           'e0': d.wiggle(0.0, 'x0', 0.05), 'f0': d.wiggle(-1.0, 'x0')}
    return fns, constants


def _t30_case2(d):
    constants = {'alpha': d.signed(0.5, 1.0), 'beta': d.signed(0.5, 1.0),
                 'gamma': d.signed(0.5, 1.0)}
    fns, al, be, ga = _t30_indefinite(d, constants)
    fns['c0'] = d.wiggle(0.0, 'x0', 0.05)
    numerator = _lin([(al * al, fns['a0']), (2 * al * be, fns['b0']), (be * be, fns['d0']),
                      (2 * al * ga, fns['c0']), (2 * be * ga, fns['e0'])])
    fns['f0'] = '-(%s)/%s' % (numerator, _num(ga * ga))
    return fns, constants


def _t30_case3(d):
    constants = {'alpha': d.signed(0.3, 0.7), 'beta': d.signed(0.5, 1.0),
                 'gamma': d.signed(0.7, 1.0)}
    fns, al, be, ga = _t30_indefinite(d, constants)
    fns['c0'] = '-(%s)/%s' % (_lin([(al, fns['a0']), (be, fns['b0'])]), _num(ga))
    m2 = _lin([(al, fns['b0']), (be, fns['d0']), (ga, fns['e0'])])
    rest = _lin([(al, fns['c0']), (be, fns['e0'])])
    fns['f0'] = '-(%s*(%s) + %s*(%s))/%s' % (_num(be), m2, _num(ga), rest, _num(ga * ga))
    return fns, constants


# (3.1)

def _t31_block(d):
    return {'a0': d.wiggle(0.0, 'x0', 0.2), 'b0': d.wiggle(0.0, 'x0', 0.2),
            'c0': d.wiggle(-1.0, 'x0'), 'd0': d.wiggle(-1.0, 'x0'),
            'f0': d.wiggle(0.0, 'x0', 0.05)}


def _t31_case1(d):
    constants = {'alpha': d.uniform(0.8, 1.2), 'beta': d.uniform(-0.5, 0.5),
                 'gamma': d.uniform(-0.5, 0.5)}
    return _t31_block(d), constants


def _t31_case2(d):
    # a definite (x2, x3) block only admits the trivial constants
    fns = _t31_block(d)
    fns['L0'] = d.wiggle(1.0, 'x0', 0.2)
    return fns, {'alpha': 0.0, 'beta': 0.0, 'gamma': 0.0}


def _t31_case3(d):
    return _t31_block(d), {'alpha': 0.0, 'beta': 0.0, 'gamma': 0.0}


# (2.0)

def _t20_case1(d):
    al, be = d.signed(0.3, 1.0), d.signed(0.3, 1.0)
    fns = {'s': '-1', 'a0': d.wiggle(-0.5, 'x0', 0.05), 'a1': d.wiggle(-0.5, 'x1', 0.05),
           'b0': d.wiggle(0.0, 'x0', 0.05), 'b1': d.wiggle(0.0, 'x1', 0.05),
           'c0': d.wiggle(-0.5, 'x0', 0.05), 'c1': d.wiggle(-0.5, 'x1', 0.05)}
    # gamma above |n1| keeps L1 real while n0 < 0 keeps L0 real
    ga = round(0.5 * (al * al + be * be) + d.uniform(0.3, 0.6), 4)
    return fns, {'alpha': al, 'beta': be, 'gamma': ga}


def _t20_case2(d):
    al, be = d.signed(0.3, 1.0), d.signed(0.5, 1.0)
    ga = round(0.5 * (al * al + be * be), 4)
    fns = {'s': '-1', 'a0': d.wiggle(0.5, 'x0', 0.05), 'a1': d.wiggle(0.5, 'x1', 0.05),
           'b0': d.wiggle(0.0, 'x0', 0.05), 'b1': d.wiggle(0.0, 'x1', 0.05),
           'c1': d.wiggle(0.5, 'x1', 0.05)}
    fns['c0'] = '(%s - (%s))/%s' % (
        _num(ga), _lin([(al * al, fns['a0']), (2 * al * be, fns['b0'])]), _num(be * be))
    return fns, {'alpha': al, 'beta': be, 'gamma': ga}


def _t20_case3(d):
    al, be = d.signed(0.3, 1.0), d.signed(0.5, 1.0)
    k = d.uniform(-0.3, 0.3)
    fns = {'s': '1', 'a0': d.wiggle(0.5, 'x0', 0.05), 'a1': d.wiggle(0.5, 'x1', 0.05),
           'b0': d.wiggle(0.0, 'x0', 0.05), 'b1': d.wiggle(0.0, 'x1', 0.05)}
    for axis, target in (('0', k), ('1', -k)):
        known = _lin([(al * al, fns['a' + axis]), (2 * al * be, fns['b' + axis])])
        fns['c' + axis] = '(%s - (%s))/%s' % (_num(target), known, _num(be * be))
    return fns, {'alpha': al, 'beta': be}


# (2.1)

def _t21_common(d):
    return {'a0': d.wiggle(0.5, 'x0', 0.05), 'a1': d.wiggle(0.3, 'x1', 0.05),
            'b0': d.wiggle(0.0, 'x0', 0.1), 'b1': d.wiggle(0.0, 'x1', 0.1),
            'c0': d.wiggle(d.uniform(-0.5, 0.5), 'x0', 0.1),
            'c1': d.wiggle(d.uniform(-0.5, 0.5), 'x1', 0.1),
            'f1': d.wiggle(0.0, 'x1', 0.1)}


def _t21_case1(d):
    fns = _t21_common(d)
    al, be = d.uniform(-0.7, 0.7), d.uniform(0.7, 1.2)
    # n0 stays below alpha^2 0.55 + 2 |alpha beta| 0.1 + beta^2 0.7
    ga = round(0.55 * al * al + 0.2 * abs(al * be) + 0.7 * be * be + d.uniform(0.2, 0.5), 4)
    return fns, {'alpha': al, 'beta': be, 'gamma': ga}


def _t21_case2(d):
    fns = _t21_common(d)
    fns.update({'a0': d.wiggle(-0.5, 'x0', 0.05), 'a1': '0', 'f1': '0'})
    return fns, {'alpha': d.signed(0.5, 1.0), 'sigma': d.uniform(-1.0, 1.0)}


def _t21_case3(d):
    fns = _t21_common(d)
    al, be = d.uniform(-0.7, 0.7), d.uniform(0.7, 1.2)
    u, v = d.uniform(-0.3, 0.3), d.uniform(-0.3, 0.3)
    p, q = d.uniform(-1.0, 1.0), d.uniform(-1.0, 1.0)
    fns['b0'] = '(%s - %s*(%s))/%s' % (_num(u), _num(al), fns['a0'], _num(be))
    fns['c0'] = '(%s - %s*(%s))/%s' % (_num(v), _num(al), fns['b0'], _num(be))
    constants = {'alpha': al, 'beta': be, 'gamma': al * u + be * v, 'p': p, 'q': q,
                 'r': p * u + q * v}
    return fns, constants


def _t21_case4(d):
    fns = _t21_common(d)
    fns['L1'] = d.wiggle(1.0, 'x1', 0.2)
    return fns, {}


# (1.0) and (1.1)

def _potentials(d, t_base, omega_base):
    fns = {}
    for mu, (t, w) in enumerate(zip(t_base, omega_base), 1):
        fns['t%d' % mu] = d.wiggle(t, 'x%d' % mu)
        fns['omega%d' % mu] = d.wiggle(w, 'x%d' % mu)
    return fns


def _solved_omega(fns, mu, constants):
    """omega_mu = (beta t_mu + gamma) / alpha^2, which makes L_mu vanish."""
    al, be, ga = constants['alpha'], constants['beta'], constants['gamma']
    return '(%s*(%s) + %s)/%s' % (_num(be), fns['t%d' % mu], _num(ga), _num(al * al))


def _t10_constants(d):
    return {'alpha': d.signed(0.5, 1.0), 'beta': d.uniform(0.0, 0.5),
            'gamma': d.uniform(0.5, 1.0)}


def _t10_case1(d):
    return _potentials(d, (0.0, 1.0, 2.0), (0.0, -0.5, 0.0)), _t10_constants(d)


def _t10_case2(d):
    constants = _t10_constants(d)
    fns = _potentials(d, (0.0, 1.0, 2.0), (0.0, -0.5, 0.0))
    fns['omega1'] = _solved_omega(fns, 1, constants)
    return fns, constants


def _t10_case3(d):
    constants = _t10_constants(d)
    fns = _potentials(d, (1.0, 0.0, 2.0), (-0.3, 0.0, 0.0))
    for mu in (2, 3):
        fns['omega%d' % mu] = _solved_omega(fns, mu, constants)
    return fns, constants


def _t11_case1(d):
    fns = _potentials(d, (1.0, 0.0, 2.0), (0.0, 0.0, 0.0))
    return fns, _t10_constants(d)


def _t11_case2(d):
    fns = _potentials(d, (0.0, 1.0, 2.0), (0.0, 0.0, 0.0))
    fns['t1'] = '0'
    fns['L1'] = d.wiggle(1.0, 'x1', 0.2)
    return fns, {'beta': d.uniform(0.5, 1.5)}


def _t11_case3(d):
    constants = _t10_constants(d)
    fns = _potentials(d, (1.0, 0.0, 2.0), (0.0, 0.0, 0.0))
    fns['omega3'] = _solved_omega(fns, 3, constants)
    q = d.uniform(-1.0, 1.0)
    constants.update(q=q, p=q * constants['beta'] / constants['alpha'])
    return fns, constants


# (0.0)

def _points(d, centres, spread=0.05):
    """a_i and b_i near the plane points ``centres``; a vertex inside the triangle of
    the other three gives V^i three signs alike and one opposite."""
    fns = {}
    for i, (a, b) in enumerate(centres):
        fns['a%d' % i] = d.wiggle(a + d.uniform(-spread, spread), 'x%d' % i, 0.05)
        fns['b%d' % i] = d.wiggle(b + d.uniform(-spread, spread), 'x%d' % i, 0.05)
    return fns


def _on_line(fns, i, constants):
    """b_i solved from alpha a_i + beta b_i + gamma = 0."""
    al, be, ga = constants['alpha'], constants['beta'], constants['gamma']
    return '-(%s*(%s) + %s)/%s' % (_num(al), fns['a%d' % i], _num(ga), _num(be))


def _t00_case1(d):
    constants = {'alpha': d.uniform(-0.5, 0.5), 'beta': d.uniform(-0.5, 0.5),
                 'gamma': d.uniform(2.0, 2.5)}
    return _points(d, [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (-1.0, -1.0)]), constants


def _t00_line_constants(d):
    return {'alpha': d.uniform(-0.3, 0.3), 'beta': d.uniform(0.8, 1.2),
            'gamma': d.uniform(0.8, 1.2)}


def _t00_case2(d):
    constants = _t00_line_constants(d)
    fns = _points(d, [(0.0, -1.0), (0.0, 0.3), (-1.0, 1.0), (1.0, 1.0)])
    fns['b0'] = _on_line(fns, 0, constants)
    return fns, constants


def _t00_case3(d):
    constants = _t00_line_constants(d)
    fns = _points(d, [(-1.0, -1.0), (1.0, -1.0), (0.0, 0.0), (0.0, 1.5)])
    for i in (0, 1):
        fns['b%d' % i] = _on_line(fns, i, constants)
    return fns, constants


BUILDERS = {
    (CssType.T30, 1): _t30_case1,
    (CssType.T30, 2): _t30_case2,
    (CssType.T30, 3): _t30_case3,
    (CssType.T31, 1): _t31_case1,
    (CssType.T31, 2): _t31_case2,
    (CssType.T31, 3): _t31_case3,
    (CssType.T20, 1): _t20_case1,
    (CssType.T20, 2): _t20_case2,
    (CssType.T20, 3): _t20_case3,
    (CssType.T21, 1): _t21_case1,
    (CssType.T21, 2): _t21_case2,
    (CssType.T21, 3): _t21_case3,
    (CssType.T21, 4): _t21_case4,
    (CssType.T10, 1): _t10_case1,
    (CssType.T10, 2): _t10_case2,
    (CssType.T10, 3): _t10_case3,
    (CssType.T11, 1): _t11_case1,
    (CssType.T11, 2): _t11_case2,
    (CssType.T11, 3): _t11_case3,
    (CssType.T00, 1): _t00_case1,
    (CssType.T00, 2): _t00_case2,
    (CssType.T00, 3): _t00_case3,
}


def random_config(css_type, case_id, draw):
    """Config dictionary of one candidate model."""
    case = get_case(css_type, case_id)
    functions, constants = BUILDERS[(css_type, case.case_id)](draw)
    return {
        'type': css_type.label,
        'case': case.case_id,
        'functions': functions,
        'constants': dict((k, constants.get(k, 0.0)) for k in case.constants),
        'delta': draw.delta(),
        'profile': draw.profile(case.arguments),
        'box': [list(b) for b in BOX],
        'x_ref': list(X_REF),
    }


def make_random_model(css_type, case_id, seed=0, max_tries=20, grid_n=5):
    """A valid random model of the given case.

    Args:
        css_type (CssType)
        case_id (int)
        seed (int) seeds numpy's RandomState; equal seeds give equal models
        max_tries (int) candidates drawn before giving up
        grid_n (int) validation grid per axis

    Returns: (CssModel) named random-<type>-<case>-<seed>

    Raises:
        GenerationFailure when no candidate passes validation
    """
    rng = numpy.random.RandomState(seed)
    draw = _Draw(rng)
    for attempt in range(max_tries):
        config = random_config(css_type, case_id, draw)
        config['name'] = 'random-%s-%d-%d' % (css_type.label, int(case_id), seed)
        model = model_from_config(process_options(config))
        violations = validate_constraints(model, grid_n)
        if not violations:
            logging.debug('Accepted %s after %d rejections', config['name'], attempt)
            return model
        logging.debug('Rejected candidate %d for %s: %s', attempt, config['name'],
                      ', '.join(v.constraint for v in violations))
    raise GenerationFailure('no valid model for type %s case %s after %d tries'
                            % (css_type.label, case_id, max_tries))
