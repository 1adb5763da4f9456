# -*- coding: utf-8 -*-
"""
Pure-radiation fields T_ij = eps L_i L_j on a conformally Stäckel model.
"""
import math
from collections import namedtuple

import numpy

from .cases import LORENTZ
from .errors import DomainError
from .metrics import contravariant_metric
from .solutions import solve

RadiationAtPoint = namedtuple('RadiationAtPoint', 'L invariants eps T P')


def _shifted(model, covector):
    shift = model.perturbation.covector_shift
    return numpy.asarray(covector, dtype=float) + numpy.asarray(shift, dtype=float)


def wave_covector(model, x):
    """Separated covariant wave vector L_i at ``x``."""
    return _shifted(model, solve(model, x, with_arguments=False).covector)


def invariants(model, x):
    """Arguments of the profile F at ``x``."""
    return tuple(solve(model, x).arguments)


def _density(model, x, solution):
    det = float(numpy.linalg.det(contravariant_metric(model, x)))
    if model.case.signature == LORENTZ and det >= 0.0:
        raise DomainError('det g^ij = %r is not negative' % det)
    delta = model.delta(*x)
    # Delta and the divisor keep one sign on a valid box
    eps = (model.profile(*solution.arguments) * abs(delta) * math.sqrt(abs(det)) /
           abs(solution.divisor))
    if model.perturbation.eps_factor is not None:
        eps *= model.perturbation.eps_factor(*x)
    return eps


def energy_density(model, x):
    """eps = F(invariants) |Delta| sqrt|det g^ij| / |D| for the case divisor D."""
    return _density(model, x, solve(model, x))


def stress_energy(model, x):
    return radiation_at(model, x).T


def radiation_at(model, x):
    """Everything the radiation field defines at ``x`` from one solve."""
    solution = solve(model, x)
    covector = _shifted(model, solution.covector)
    eps = _density(model, x, solution)
    return RadiationAtPoint(covector, tuple(solution.arguments), eps,
                            eps * numpy.outer(covector, covector),
                            _diagnostic(model, x, eps))


def _diagnostic(model, x, eps):
    if eps == 0.0:
        return None
    det = float(numpy.linalg.det(contravariant_metric(model, x)))
    delta = model.delta(*x)
    return math.log(abs(eps * eps / (delta * delta * det)))


def conformal_diagnostic(model, x):
    """P = ln|eps^2 / (Delta^2 det g^ij)|, or None where eps vanishes.

    P does not depend on Delta: it reduces to ln(F^2 / D^2).
    """
    return _diagnostic(model, x, energy_density(model, x))
