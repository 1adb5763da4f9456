# -*- coding: utf-8 -*-
"""
Numerical oracles for the radiation solutions: covariant conservation of T,
geodesic transport and nullity of L, the eikonal action, and null geodesics.

All derivatives of the metric and of the radiation field are central finite
differences on the model's closed forms, so none of the checks reuse the
algebra that produced the solution.
"""
import logging
import os
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

import numpy
import pandas

from .errors import BoxExit, DomainError, EvalError, QuadratureNonConvergence, SingularMatrix
from .metrics import build_metric, contravariant_metric, validate_constraints
from .numerics import (convergence_order, cumulative_integral, fd_step, five_point_diff,
                       rk4_step)
from .radiation import radiation_at, wave_covector
from .utils import DEFAULT_TOLERANCES

CHECKS = ('null', 'divergence', 'geodesic', 'eikonal')

CSV_COLUMNS = ['x0', 'x1', 'x2', 'x3', 'L0', 'L1', 'L2', 'L3', 'eps',
               'null_res', 'div_res', 'geo_res']

# skipped points allowed before a scan fails
SKIPPED_BUDGET = 0.05

POINT_ERRORS = (DomainError, EvalError, QuadratureNonConvergence, SingularMatrix)

NORMALIZATIONS = {
    'null': '|g| |L|^2',
    'eikonal': '|g| |L|^2',
    'divergence': '|g| max(|T| |Gamma|, |dT|)',
    'geodesic': '|L^i| max(|dL|, |Gamma| |L|)',
}


def _max_abs(a):
    return float(numpy.max(numpy.abs(a)))


def _steps(x, h):
    if h is None:
        return [fd_step(v) for v in x]
    return [float(h)] * 4


def _stencil(field, x, h):
    """Central differences of an array-valued ``field`` along every axis.

    Returns: (numpy.ndarray) derivative array with the axis index first
    """
    x = numpy.asarray(x, dtype=float)
    rows = []
    for k, step in enumerate(_steps(x, h)):
        e = numpy.zeros(4)
        e[k] = step
        rows.append((numpy.asarray(field(x + e)) - numpy.asarray(field(x - e))) / (2.0 * step))
    return numpy.array(rows)


def metric_derivatives(model, x, h=None):
    """(MetricAtPoint, dg) where dg[k, i, j] = d_k g_ij of the covariant metric."""
    metric = build_metric(model, x)
    dg = _stencil(lambda y: build_metric(model, y).covariant, x, h)
    return metric, dg


def _christoffel(metric, dg):
    lowered = (numpy.einsum('jlk->ljk', dg) + numpy.einsum('klj->ljk', dg) - dg)
    return 0.5 * numpy.einsum('il,ljk->ijk', metric.contravariant, lowered)


def christoffel(model, x, h=None):
    """Gamma^i_jk at ``x``; index order (i, j, k), symmetric in j and k."""
    return _christoffel(*metric_derivatives(model, x, h))


def _scaled(raw, scale):
    if scale == 0.0:
        return numpy.zeros_like(raw)
    return raw / scale


def divergence_residual(model, x, h=None, normalize=True):
    """R_j = g^ik (d_k T_ij - Gamma^l_ki T_lj - Gamma^l_kj T_il)."""
    metric, dg = metric_derivatives(model, x, h)
    gamma = _christoffel(metric, dg)
    ginv = metric.contravariant
    t = radiation_at(model, x).T
    dt = _stencil(lambda y: radiation_at(model, y).T, x, h)
    raw = (numpy.einsum('ik,kij->j', ginv, dt) -
           numpy.einsum('ik,lki,lj->j', ginv, gamma, t) -
           numpy.einsum('ik,lkj,il->j', ginv, gamma, t))
    if not normalize:
        return raw
    scale = _max_abs(ginv) * max(_max_abs(t) * _max_abs(gamma), _max_abs(dt))
    return _scaled(raw, scale)


def geodesic_residual(model, x, h=None):
    """G_i = L^j (d_j L_i - Gamma^k_ji L_k), normalised by local scales."""
    metric, dg = metric_derivatives(model, x, h)
    gamma = _christoffel(metric, dg)
    covector = wave_covector(model, x)
    raised = metric.contravariant.dot(covector)
    dl = _stencil(lambda y: wave_covector(model, y), x, h)
    raw = (numpy.einsum('j,ji->i', raised, dl) -
           numpy.einsum('j,kji,k->i', raised, gamma, covector))
    scale = _max_abs(raised) * max(_max_abs(dl), _max_abs(gamma) * _max_abs(covector))
    return _scaled(raw, scale)


def eikonal_residual(model, x):
    """|g^ij L_i L_j| / (|g| |L|^2); zero for a vanishing covector."""
    covector = wave_covector(model, x)
    ginv = contravariant_metric(model, x)
    norm = _max_abs(covector)
    if norm == 0.0:
        return 0.0
    return abs(float(covector.dot(ginv).dot(covector))) / (norm * norm * _max_abs(ginv))


def eikonal_action(model, x, order=(0, 1, 2, 3)):
    """S(x) - S(x_ref) integrated along axis-parallel legs taken in ``order``."""
    point = list(model.x_ref)
    total = 0.0
    for axis in order:
        def component(t, axis=axis, base=tuple(point)):
            y = list(base)
            y[axis] = t
            return wave_covector(model, y)[axis]
        total += cumulative_integral(component, point[axis], x[axis], model.quadrature)
        point[axis] = x[axis]
    return total


def divergence_convergence(model, x, steps=(1e-2, 3e-3, 1e-3)):
    """Log-log slope of the unnormalised divergence residual over FD steps."""
    errors = [_max_abs(divergence_residual(model, x, h, normalize=False)) for h in steps]
    logging.debug('Divergence residuals %s for steps %s', errors, steps)
    return convergence_order(steps, errors)


GeodesicTrajectory = namedtuple('GeodesicTrajectory',
                                'samples hamiltonian_drift transport_error truncated')

TRAJECTORY_COLUMNS = ['lambda', 'x0', 'x1', 'x2', 'x3', 'p0', 'p1', 'p2', 'p3', 'H']


def _hamiltonian(model, x, p):
    return 0.5 * float(p.dot(contravariant_metric(model, x)).dot(p))


def integrate_null_geodesic(model, x0, steps, dl):
    """RK4 integration of x' = g^ij p_j, p'_i = -1/2 d_i g^jk p_j p_k from p = L(x0).

    Integration stops at the last step that stays inside the box.

    Returns: (GeodesicTrajectory) samples as a pandas DataFrame
    """
    x0 = numpy.asarray(x0, dtype=float)
    if not model.contains(x0):
        raise ValueError('start point %r lies outside the box' % (tuple(x0),))

    def deriv(state):
        x, p = state[:4], state[4:]
        ginv = contravariant_metric(model, x)
        dginv = numpy.array([
            five_point_diff(lambda t: _axis_metric(model, x, k, t), x[k], fd_step(x[k]))
            for k in range(4)])
        return numpy.concatenate([ginv.dot(p), -0.5 * numpy.einsum('ijk,j,k->i', dginv, p, p)])

    state = numpy.concatenate([x0, wave_covector(model, x0)])
    rows = [_sample(model, 0.0, state)]
    transport = 0.0
    truncated = False
    for n in range(1, int(steps) + 1):
        try:
            state = _step_inside(model, state, deriv, dl)
        except BoxExit as e:
            truncated = True
            logging.info('Geodesic truncated after %d steps: %s', n - 1, e)
            break
        rows.append(_sample(model, n * dl, state))
        deviation = state[4:] - wave_covector(model, state[:4])
        transport = max(transport, _max_abs(deviation))
    samples = pandas.DataFrame(rows, columns=TRAJECTORY_COLUMNS)
    drift = float(samples['H'].abs().max())
    return GeodesicTrajectory(samples, drift, transport, truncated)


def _step_inside(model, state, deriv, dl):
    candidate = rk4_step(state, deriv, dl)
    if not model.contains(candidate[:4]):
        raise BoxExit('left the box at %r' % (tuple(candidate[:4]),))
    return candidate


def _axis_metric(model, x, k, t):
    y = numpy.array(x, dtype=float)
    y[k] = t
    return contravariant_metric(model, y)


def _sample(model, affine, state):
    x, p = state[:4], state[4:]
    return [affine] + list(x) + list(p) + [_hamiltonian(model, x, p)]


def scan_threads(num_cores=None):
    """Worker count: explicit value, else CSSKIT_THREADS, else the CPU count."""
    if num_cores:
        return int(num_cores)
    env = os.environ.get('CSSKIT_THREADS')
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def scan_points(model, grid_n, random_points=0, seed=0, h=None):
    """Grid over the box inset by two FD steps, followed by seeded random points.

    ``grid_n`` is one count for every axis or a sequence of four per-axis counts.
    """
    counts = [int(grid_n)] * 4 if numpy.isscalar(grid_n) else [int(n) for n in grid_n]
    if len(counts) != 4:
        raise ValueError('grid needs one count per axis')
    axes = []
    margins = []
    for (lo, hi), n in zip(model.box, counts):
        step = fd_step(max(abs(lo), abs(hi))) if h is None else float(h)
        margins.append(2.0 * step)
        axes.append(numpy.linspace(lo + 2.0 * step, hi - 2.0 * step, n))
    mesh = numpy.meshgrid(*axes, indexing='ij')
    points = [tuple(float(v) for v in p) for p in zip(*(m.ravel() for m in mesh))]
    if random_points:
        rng = numpy.random.RandomState(seed)
        lows = [lo + m for (lo, _), m in zip(model.box, margins)]
        highs = [hi - m for (_, hi), m in zip(model.box, margins)]
        for p in rng.uniform(lows, highs, size=(int(random_points), 4)):
            points.append(tuple(float(v) for v in p))
    return points


def _evaluate_point(model, x, checks, h):
    row = dict(zip(('x0', 'x1', 'x2', 'x3'), x))
    row.update(skipped=False, reason='')
    try:
        field = radiation_at(model, x)
        row.update(zip(('L0', 'L1', 'L2', 'L3'), (float(v) for v in field.L)))
        row['eps'] = float(field.eps)
        if 'null' in checks or 'eikonal' in checks:
            row['null_res'] = eikonal_residual(model, x)
        if 'divergence' in checks:
            row['div_res'] = _max_abs(divergence_residual(model, x, h))
        if 'geodesic' in checks:
            row['geo_res'] = _max_abs(geodesic_residual(model, x, h))
    except POINT_ERRORS as e:
        logging.debug('Skipping %s: %s', x, e)
        row.update(skipped=True, reason='%s: %s' % (type(e).__name__, e))
    return row


class ResidualReport(object):
    """Per-point residuals and their aggregate judgement for one model."""

    def __init__(self, model_id, checks, points, fd_step, seed):
        self.model_id = model_id
        self.checks = checks
        self.points = points
        self.fd_step = fd_step
        self.seed = seed

    @property
    def passed(self):
        return all(c['pass'] for c in self.checks)

    def failures(self):
        return [c['name'] for c in self.checks if not c['pass']]

    def to_dict(self):
        return {
            'model': self.model_id,
            'checks': self.checks,
            'points': int(len(self.points)),
            'skipped': int(self.points['skipped'].sum()),
            'fd_step': self.fd_step,
            'seed': self.seed,
            'pass': self.passed,
        }

    def to_csv(self, path):
        """Write one row per evaluated point in the fixed column order."""
        table = self.points[~self.points['skipped']].reindex(columns=CSV_COLUMNS)
        table.to_csv(path, index=False, float_format='%.17g')


def _check_entry(name, values, tol):
    max_abs = float(values.max()) if len(values) else 0.0
    return {
        'name': name,
        'points_evaluated': int(len(values)),
        'max_abs': max_abs,
        'mean_abs': float(values.mean()) if len(values) else 0.0,
        'normalization': NORMALIZATIONS[name],
        'tol': tol,
        'pass': bool(len(values)) and max_abs <= tol,
    }


def evaluate_points(model, points, checks=CHECKS, h=None, threads=None):
    """Residual table for ``points``; rows keep the order of ``points``."""
    workers = scan_threads(threads)
    logging.info('Evaluating %d points on %d threads', len(points), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(lambda x: _evaluate_point(model, x, checks, h), points))
    columns = CSV_COLUMNS + ['skipped', 'reason']
    return pandas.DataFrame(rows).reindex(columns=columns)


def scan(model, grid_n=5, checks=CHECKS, seed=0, random_points=0, tolerances=None, h=None,
         threads=None, constraint_grid=5):
    """Run the selected residual checks on a grid and random interior points.

    Args:
        model (CssModel)
        grid_n (int or list) points per axis of the inset grid, or four per-axis counts
        checks (list) subset of CHECKS
        seed (int) seed of the random points
        random_points (int) number of additional random points
        tolerances (dict) overrides DEFAULT_TOLERANCES
        h (float) FD step, None for 1e-3 (1 + |x|)
        threads (int) worker count, see scan_threads
        constraint_grid (int) grid size of the constraint validation

    Returns: (ResidualReport)
    """
    unknown = set(checks) - set(CHECKS)
    if unknown:
        raise ValueError('unknown checks: %s' % ', '.join(sorted(unknown)))
    tols = dict(DEFAULT_TOLERANCES)
    tols.update(tolerances or {})

    logging.info('Validating constraints of %s', model.name)
    violations = validate_constraints(model, constraint_grid, tols['constraint'])
    entries = [{
        'name': 'constraints',
        'violations': [v.constraint for v in violations],
        'tol': tols['constraint'],
        'pass': not violations,
    }]

    points = scan_points(model, grid_n, random_points, seed, h)
    table = evaluate_points(model, points, checks, h, threads)
    evaluated = table[~table['skipped']]
    column = {'null': 'null_res', 'eikonal': 'null_res', 'divergence': 'div_res',
              'geodesic': 'geo_res'}
    tol_key = {'null': 'null', 'eikonal': 'null', 'divergence': 'divergence',
               'geodesic': 'geodesic'}
    for name in CHECKS:
        if name in checks:
            entries.append(_check_entry(name, evaluated[column[name]].astype(float),
                                        tols[tol_key[name]]))

    skipped = int(table['skipped'].sum())
    fraction = skipped / float(len(table)) if len(table) else 0.0
    entries.append({
        'name': 'skipped_points',
        'count': skipped,
        'fraction': fraction,
        'tol': SKIPPED_BUDGET,
        'pass': fraction <= SKIPPED_BUDGET,
    })
    report = ResidualReport(model.name, entries, table, h, seed)
    if not report.passed:
        logging.info('Failed checks: %s', ', '.join(report.failures()))
    return report
