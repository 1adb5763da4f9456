# -*- coding: utf-8 -*-
"""
Numerical kernels shared by the radiation formulas and the verification oracles.
"""
import math
import threading
from collections import namedtuple

import numpy

from .errors import QuadratureNonConvergence, SingularMatrix

QuadratureSpec = namedtuple('QuadratureSpec', 'abs_tol rel_tol max_depth')


def quadrature_spec(abs_tol=1e-10, rel_tol=1e-10, max_depth=40):
    """Adaptive-Simpson settings; tolerances must be positive."""
    if not (abs_tol > 0 and rel_tol > 0):
        raise ValueError('quadrature tolerances must be positive')
    if int(max_depth) < 1:
        raise ValueError('max_depth must be at least 1')
    return QuadratureSpec(float(abs_tol), float(rel_tol), int(max_depth))


DEFAULT_QUADRATURE = quadrature_spec()

# subdivision always goes this deep before the error estimate is trusted
_MIN_DEPTH = 2


def _simpson(fa, fm, fb, h):
    return h / 3.0 * (fa + 4.0 * fm + fb)


def cumulative_integral(f, x_ref, x, spec=DEFAULT_QUADRATURE):
    """Signed integral of ``f`` from ``x_ref`` to ``x`` by adaptive Simpson.

    Args:
        f (callable) real function of one real variable
        x_ref (float) lower limit
        x (float) upper limit, may lie below ``x_ref``
        spec (QuadratureSpec) tolerances

    Returns: (float) the integral; exactly 0.0 when ``x == x_ref``
    """
    a, b = float(x_ref), float(x)
    if a == b:
        return 0.0
    if a > b:
        return -cumulative_integral(f, b, a, spec)

    def _adaptive(a, b, fa, fm, fb, s_whole, depth, tol):
        m = (a + b) / 2.0
        h = (b - a) / 2.0
        flm = f((a + m) / 2.0)
        frm = f((m + b) / 2.0)
        s_left = _simpson(fa, flm, fm, h / 2.0)
        s_right = _simpson(fm, frm, fb, h / 2.0)
        s_combined = s_left + s_right
        error = (s_combined - s_whole) / 15.0
        if depth >= _MIN_DEPTH and abs(error) <= tol:
            # Richardson correction
            return s_combined + error
        if depth >= spec.max_depth:
            raise QuadratureNonConvergence(
                'no convergence on [%r, %r] after %d subdivisions' % (a, b, depth))
        return (_adaptive(a, m, fa, flm, fm, s_left, depth + 1, tol / 2.0) +
                _adaptive(m, b, fm, frm, fb, s_right, depth + 1, tol / 2.0))

    fa, fm, fb = f(a), f((a + b) / 2.0), f(b)
    s_whole = _simpson(fa, fm, fb, (b - a) / 2.0)
    tol = max(spec.abs_tol, spec.rel_tol * abs(s_whole))
    return _adaptive(a, b, fa, fm, fb, s_whole, 0, tol)


class CumulativeIntegrator(object):
    """Memoised cumulative integrals on a fixed cell grid anchored at ``x_ref``.

    An integral from ``x_ref`` to ``x`` is the sum of whole cells between them
    (each computed once per key) plus the partial cell up to ``x``. Cell values
    do not depend on evaluation order, so scans give identical numbers whatever
    the order in which points are visited.
    """

    def __init__(self, spec=DEFAULT_QUADRATURE, cells=64):
        self.spec = spec
        self.cells = int(cells)
        self._cache = {}
        self._lock = threading.Lock()

    def integral(self, key, f, x_ref, x, interval):
        """Integral of ``f`` from ``x_ref`` to ``x``.

        Args:
            key (hashable) identifies ``f``; one key must always mean one integrand
            f (callable) integrand
            x_ref (float) reference point
            x (float) end point
            interval (tuple) (lo, hi) of the coordinate, sets the cell width
        """
        lo, hi = interval
        width = (hi - lo) / self.cells
        if width <= 0.0 or x == x_ref:
            return cumulative_integral(f, x_ref, x, self.spec)
        k = int((x - x_ref) / width)
        total = 0.0
        if k > 0:
            for j in range(k):
                total += self._cell(key, f, x_ref, width, j)
        elif k < 0:
            for j in range(k, 0):
                total -= self._cell(key, f, x_ref, width, j)
        return total + cumulative_integral(f, x_ref + k * width, x, self.spec)

    def _cell(self, key, f, x_ref, width, j):
        cache_key = (key, x_ref, width, j)
        value = self._cache.get(cache_key)
        if value is None:
            value = cumulative_integral(f, x_ref + j * width, x_ref + (j + 1) * width, self.spec)
            with self._lock:
                self._cache[cache_key] = value
        return value

    def __len__(self):
        return len(self._cache)


def fd_step(x):
    """Default central-difference step for coordinate value ``x``."""
    return 1e-3 * (1.0 + abs(x))


def central_diff(g, x, h):
    return (g(x + h) - g(x - h)) / (2.0 * h)


def five_point_diff(g, x, h):
    """Fourth-order central difference."""
    return (8.0 * (g(x + h) - g(x - h)) - (g(x + 2 * h) - g(x - 2 * h))) / (12.0 * h)


def convergence_order(hs, errors):
    """Slope of log(error) against log(h) from a least-squares fit.

    Exactly zero errors carry no slope and are dropped; with fewer than two
    nonzero errors left the result is ``inf`` (converged at every step).
    """
    hs = numpy.asarray(hs, dtype=float)
    errors = numpy.abs(numpy.asarray(errors, dtype=float))
    nonzero = errors > 0.0
    if nonzero.sum() < 2:
        return float('inf')
    slope, _ = numpy.polyfit(numpy.log(hs[nonzero]), numpy.log(errors[nonzero]), 1)
    return float(slope)


# Symmetric 4x4 matrices are numpy arrays; these helpers keep them symmetric.

SYM4_INDICES = [(i, j) for i in range(4) for j in range(i, 4)]


def sym4(components):
    """Build a symmetric 4x4 array from its 10 upper-triangle components.

    Components are ordered row by row: 00, 01, 02, 03, 11, 12, 13, 22, 23, 33.
    """
    components = list(components)
    if len(components) != len(SYM4_INDICES):
        raise ValueError('a symmetric 4x4 matrix has 10 independent components')
    m = numpy.zeros((4, 4))
    for (i, j), value in zip(SYM4_INDICES, components):
        m[i, j] = m[j, i] = value
    return m


def sym4_components(m):
    return [float(m[i, j]) for i, j in SYM4_INDICES]


def invert_sym4(m):
    """Inverse and determinant of a symmetric 4x4 matrix.

    Raises:
        SingularMatrix when |det| <= 1e-14 * |m|^4 (Frobenius norm)
    """
    m = numpy.asarray(m, dtype=float)
    scale = numpy.linalg.norm(m)
    det = float(numpy.linalg.det(m))
    if not math.isfinite(det) or abs(det) <= 1e-14 * scale ** 4:
        raise SingularMatrix('determinant %r too small for matrix of norm %r' % (det, scale))
    inverse = numpy.linalg.inv(m)
    return 0.5 * (inverse + inverse.T), det


def rk4_step(state, deriv, dt):
    """One classical fourth-order Runge-Kutta step of ``d state/dt = deriv(state)``."""
    state = numpy.asarray(state, dtype=float)
    k1 = numpy.asarray(deriv(state))
    k2 = numpy.asarray(deriv(state + 0.5 * dt * k1))
    k3 = numpy.asarray(deriv(state + 0.5 * dt * k2))
    k4 = numpy.asarray(deriv(state + dt * k3))
    return state + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
