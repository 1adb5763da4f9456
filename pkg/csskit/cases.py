# -*- coding: utf-8 -*-
"""
The seven conformally Stäckel types and the registry of their radiation cases.
"""
from collections import OrderedDict, namedtuple
from enum import Enum

from .errors import ConfigError


class CssType(Enum):
    """Type label (N.N0): N commuting Killing vectors, N0 of them null."""
    T30 = (3, 0)
    T31 = (3, 1)
    T20 = (2, 0)
    T21 = (2, 1)
    T10 = (1, 0)
    T11 = (1, 1)
    T00 = (0, 0)

    @property
    def label(self):
        return '%d.%d' % self.value

    @classmethod
    def from_label(cls, label):
        for member in cls:
            if member.label == str(label) or member.name == str(label).upper():
                return member
        raise ConfigError('unknown type %r; expected one of %s'
                          % (label, ', '.join(m.label for m in cls)))


# Metric functions per type; the trailing digit is the coordinate they depend on.
# ``s`` is the constant sign of the x1 block of type (2.0).
TYPE_FUNCTIONS = {
    CssType.T30: ('a0', 'b0', 'c0', 'd0', 'e0', 'f0'),
    CssType.T31: ('a0', 'b0', 'c0', 'd0', 'f0'),
    CssType.T20: ('s', 'a0', 'a1', 'b0', 'b1', 'c0', 'c1'),
    CssType.T21: ('a0', 'a1', 'b0', 'b1', 'c0', 'c1', 'f1'),
    CssType.T10: ('t1', 't2', 't3', 'omega1', 'omega2', 'omega3'),
    CssType.T11: ('t1', 't2', 't3', 'omega1', 'omega2', 'omega3'),
    CssType.T00: ('a0', 'a1', 'a2', 'a3', 'b0', 'b1', 'b2', 'b3'),
}

CONSTANT_NAMES = ('alpha', 'beta', 'gamma', 'sigma', 'p', 'q', 'r')

LORENTZ = 'lorentz'
NEUTRAL = 'neutral'

CaseSpec = namedtuple('CaseSpec', [
    'css_type',
    'case_id',
    'condition',
    'free_functions',
    'constants',
    'arguments',
    'constraints',
    'signature',
    'reference',
    'notes',
])


def function_axis(name):
    """Coordinate index a metric function depends on."""
    if name == 's':
        return 1
    return int(name[-1])


def _case(css_type, case_id, condition, constants, arguments, constraints=(),
          free_functions=(), signature=LORENTZ, notes=''):
    reference = 'CSS type (%s), case %d: %s' % (css_type.label, case_id, condition)
    return CaseSpec(css_type, case_id, condition, tuple(free_functions), tuple(constants),
                    tuple(arguments), tuple(constraints), signature, reference, notes)


ABG = ('alpha', 'beta', 'gamma')
XYZ = ('X', 'Y', 'Z')

_CASES = [
    _case(CssType.T30, 1, 'L0 != 0', ABG, XYZ,
          notes='L0 = sqrt(-Q), the sign that satisfies the norm condition L0^2 = -Q'),
    _case(CssType.T30, 2, 'L0 = 0', ABG, ('x0', 'Y', 'Z'),
          constraints=('Q(x0) = alpha^2 a0 + 2 alpha beta b0 + beta^2 d0 + 2 alpha gamma c0'
                       ' + 2 beta gamma e0 + gamma^2 f0 = 0',)),
    _case(CssType.T30, 3, 'L0 = 0, alpha a0 + beta b0 + gamma c0 = 0', ABG, ('x0', 'x1', 'Z'),
          constraints=('alpha a0 + beta b0 + gamma c0 = 0', 'Q(x0) = 0')),
    _case(CssType.T31, 1, 'alpha + beta a0 + gamma b0 != 0', ABG, XYZ),
    _case(CssType.T31, 2, 'alpha + beta a0 + gamma b0 = 0, L0 free', ABG, ('x0', 'Y', 'Z'),
          constraints=('alpha + beta a0 + gamma b0 = 0',
                       'beta^2 c0 + 2 beta gamma f0 + gamma^2 d0 = 0'),
          free_functions=('L0',),
          notes='Lorentz signature forces alpha = beta = gamma = 0'),
    _case(CssType.T31, 3, 'L0 = 0', ABG, ('x0', 'x1', 'Z'),
          constraints=('alpha + beta a0 + gamma b0 = 0',
                       'beta^2 c0 + 2 beta gamma f0 + gamma^2 d0 = 0'),
          notes='Lorentz signature forces the zero wave vector'),
    _case(CssType.T20, 1, 'L0 != 0, L1 != 0', ABG, XYZ),
    _case(CssType.T20, 2, 'L0 = 0, L1 != 0', ABG, ('x0', 'Y', 'Z'),
          constraints=('alpha^2 a0 + 2 alpha beta b0 + beta^2 c0 = gamma',)),
    _case(CssType.T20, 3, 'L0 = L1 = 0', ('alpha', 'beta'), ('x0', 'x1', 'Z'),
          constraints=('alpha^2 A + 2 alpha beta B + beta^2 C = 0',)),
    _case(CssType.T21, 1, 'L0 != 0, alpha f1 + beta != 0', ABG, XYZ),
    _case(CssType.T21, 2, 'alpha f1 + beta = 0, L0 != 0', ('alpha', 'sigma'), ('x1', 'Y', 'Z'),
          constraints=('a1 = 0', 'f1 = 0'),
          signature=NEUTRAL,
          notes='beta = gamma = 0; no real Lorentzian instance (det = -a0 needs a0 > 0)'),
    _case(CssType.T21, 3, 'L0 = 0, alpha f1 + beta != 0', ABG + ('p', 'q', 'r'), ('x0', 'Y', 'Z'),
          constraints=('alpha^2 a0 + 2 alpha beta b0 + beta^2 c0 = gamma',
                       'p (alpha a0 + beta b0) + q (alpha b0 + beta c0) = r')),
    _case(CssType.T21, 4, 'L0 = 0, alpha = beta = gamma = 0, L1 free', (), ('x0', 'x1', 'Z'),
          free_functions=('L1',)),
    _case(CssType.T10, 1, 'L1 L2 L3 != 0', ABG, XYZ),
    _case(CssType.T10, 2, 'L1 = 0', ABG, ('x1', 'Y', 'Z'),
          constraints=('alpha^2 omega1 = beta t1 + gamma',)),
    _case(CssType.T10, 3, 'L2 = L3 = 0', ABG, ('x2', 'x3', 'Y'),
          constraints=('alpha^2 omega2 = beta t2 + gamma', 'alpha^2 omega3 = beta t3 + gamma')),
    _case(CssType.T11, 1, 'alpha != 0, L2 L3 != 0', ABG, XYZ),
    _case(CssType.T11, 2, 'alpha = 0, L1 free', ('beta',), ('x1', 'Y', 'Z'),
          constraints=('t1 = 0',),
          free_functions=('L1',),
          signature=NEUTRAL,
          notes='gamma = 0; no real Lorentzian instance (V2 = t3 and V3 = -t2 differ in sign)'),
    _case(CssType.T11, 3, 'alpha != 0, L3 = 0', ABG + ('p', 'q'), ('x3', 'Y', 'Z'),
          constraints=('alpha^2 omega3 = beta t3 + gamma', '(p alpha - q beta) t3 = 0')),
    _case(CssType.T00, 1, 'all L_i != 0', ABG, XYZ,
          notes='three components of the wave vector can not be zero'),
    _case(CssType.T00, 2, 'L0 = 0', ABG, ('x0', 'X', 'Y'),
          constraints=('alpha a0 + beta b0 + gamma = 0',)),
    _case(CssType.T00, 3, 'L0 = L1 = 0', ABG, ('x0', 'x1', 'Y'),
          constraints=('alpha a0 + beta b0 + gamma = 0', 'alpha a1 + beta b1 + gamma = 0')),
]

REGISTRY = OrderedDict(((c.css_type, c.case_id), c) for c in _CASES)


def get_case(css_type, case_id):
    try:
        return REGISTRY[(css_type, int(case_id))]
    except (KeyError, ValueError, TypeError):
        known = ', '.join(str(c.case_id) for c in cases_of(css_type))
        raise ConfigError('type %s has no case %r (cases: %s)'
                          % (css_type.label, case_id, known))


def cases_of(css_type):
    return [c for c in REGISTRY.values() if c.css_type is css_type]


def required_functions(spec):
    """Metric functions plus the free functions a case needs."""
    return TYPE_FUNCTIONS[spec.css_type] + spec.free_functions
