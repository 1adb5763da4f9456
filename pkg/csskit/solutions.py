# -*- coding: utf-8 -*-
"""
Closed-form radiation solutions, one solver per (type, case).

Each solver returns the separated wave covector L_i, the arguments of the
profile F and the divisor D in eps = F * Delta * sqrt|det g^ij| / D. With
g^ij = G^ij / Delta the conservation law reduces to d_i(F G^ij L_j / D) = 0,
so every profile argument is annihilated by the transport operator
G^ij L_j d_i. Indefinite integrals run from the model's reference point along
the single coordinate their integrand depends on.
"""
import math
from collections import namedtuple

from .cases import CssType
from .errors import DomainError

DENOMINATOR_FLOOR = 1e-12

Solution = namedtuple('Solution', 'covector arguments divisor')


def _sqrt(value, label):
    if value < 0.0:
        raise DomainError('negative radicand %r in %s' % (value, label))
    return math.sqrt(value)


def _over(num, den, label):
    if abs(den) < DENOMINATOR_FLOOR:
        raise DomainError('vanishing denominator %s = %r' % (label, den))
    return num / den


def _fn(m, name, t):
    return m.fn(name)(t)


def _quadratic_form(m, axis, t):
    """alpha^2 a + 2 alpha beta b + beta^2 c for the functions of one coordinate."""
    a, b, c = [_fn(m, k + str(axis), t) for k in 'abc']
    al, be = m.alpha, m.beta
    return al * al * a + 2 * al * be * b + be * be * c


# (3.0)

def t30_flow(m, t):
    """The x1..x3 components of the transport vector, M(x0) (alpha, beta, gamma)."""
    a0, b0, c0, d0, e0, f0 = [_fn(m, k, t) for k in ('a0', 'b0', 'c0', 'd0', 'e0', 'f0')]
    al, be, ga = m.alpha, m.beta, m.gamma
    return (al * a0 + be * b0 + ga * c0,
            al * b0 + be * d0 + ga * e0,
            al * c0 + be * e0 + ga * f0)


def t30_quadratic(m, t):
    """Q = alpha^2 a0 + 2 alpha beta b0 + beta^2 d0 + 2 alpha gamma c0 + 2 beta gamma e0
    + gamma^2 f0; the norm condition reads L0^2 = -Q."""
    m1, m2, m3 = t30_flow(m, t)
    return m.alpha * m1 + m.beta * m2 + m.gamma * m3


def _t30_l0(m, t):
    return m.flip(0) * _sqrt(-t30_quadratic(m, t), 'L0^2 = -Q')


def _t30_case1(m, x, with_arguments):
    l0 = _t30_l0(m, x[0])
    covector = (l0, m.alpha, m.beta, m.gamma)
    if not with_arguments:
        return Solution(covector, None, l0)

    def drift(k):
        return lambda t: _over(t30_flow(m, t)[k - 1], _t30_l0(m, t), 'L0')

    arguments = tuple(x[k] - m.integral('t30:m%d/L0' % k, 0, x, drift(k)) for k in (1, 2, 3))
    return Solution(covector, arguments, l0)


def _t30_case2(m, x, with_arguments):
    covector = (0.0, m.alpha, m.beta, m.gamma)
    if not with_arguments:
        return Solution(covector, None, 1.0)
    m1, m2, m3 = t30_flow(m, x[0])
    u = _over(x[1], m1, 'alpha a0 + beta b0 + gamma c0')
    y = u - _over(x[2], m2, 'alpha b0 + beta d0 + gamma e0')
    z = u - _over(x[3], m3, 'alpha c0 + beta e0 + gamma f0')
    return Solution(covector, (x[0], y, z), 1.0)


def _t30_case3(m, x, with_arguments):
    covector = (0.0, m.alpha, m.beta, m.gamma)
    if not with_arguments:
        return Solution(covector, None, 1.0)
    _, m2, m3 = t30_flow(m, x[0])
    return Solution(covector, (x[0], x[1], x[2] * m3 - x[3] * m2), 1.0)


# (3.1)

def t31_transport(m, t):
    """(w, q): w = alpha + beta a0 + gamma b0, q = beta^2 c0 + 2 beta gamma f0 + gamma^2 d0."""
    a0, b0, c0, d0, f0 = [_fn(m, k, t) for k in ('a0', 'b0', 'c0', 'd0', 'f0')]
    al, be, ga = m.alpha, m.beta, m.gamma
    return al + be * a0 + ga * b0, be * be * c0 + 2 * be * ga * f0 + ga * ga * d0


def _t31_flow(m, t, l0):
    a0, b0, c0, d0, f0 = [_fn(m, k, t) for k in ('a0', 'b0', 'c0', 'd0', 'f0')]
    be, ga = m.beta, m.gamma
    return a0 * l0 + be * c0 + ga * f0, b0 * l0 + be * f0 + ga * d0


def _t31_l0(m, t):
    w, q = t31_transport(m, t)
    return _over(-q, 2.0 * w, 'alpha + beta a0 + gamma b0')


def _t31_case1(m, x, with_arguments):
    l0 = _t31_l0(m, x[0])
    w, _ = t31_transport(m, x[0])
    covector = (l0, m.alpha, m.beta, m.gamma)
    if not with_arguments:
        return Solution(covector, None, w)

    def weight(t):
        return t31_transport(m, t)[0]

    def x1_drift(t):
        return _t31_l0(m, t) / weight(t)

    def drift(k):
        return lambda t: _t31_flow(m, t, _t31_l0(m, t))[k] / weight(t)

    arguments = (x[1] - m.integral('t31:L0/w', 0, x, x1_drift),
                 x[2] - m.integral('t31:K2/w', 0, x, drift(0)),
                 x[3] - m.integral('t31:K3/w', 0, x, drift(1)))
    return Solution(covector, arguments, w)


def _t31_case2(m, x, with_arguments):
    l0 = _fn(m, 'L0', x[0])
    covector = (l0, m.alpha, m.beta, m.gamma)
    if not with_arguments:
        return Solution(covector, None, 1.0)
    k2, k3 = _t31_flow(m, x[0], l0)
    y = x[2] - x[1] * _over(k2, l0, 'L0')
    z = x[3] - x[1] * _over(k3, l0, 'L0')
    return Solution(covector, (x[0], y, z), 1.0)


def _t31_case3(m, x, with_arguments):
    covector = (0.0, m.alpha, m.beta, m.gamma)
    if not with_arguments:
        return Solution(covector, None, 1.0)
    k2, k3 = _t31_flow(m, x[0], 0.0)
    return Solution(covector, (x[0], x[1], x[2] * k3 - x[3] * k2), 1.0)


# (2.0)

def _t20_l0(m, t):
    radicand = m.gamma - _quadratic_form(m, 0, t)
    return m.flip(0) * _sqrt(radicand, 'L0^2 = gamma - alpha^2 a0 - 2 alpha beta b0 - beta^2 c0')


def _t20_l1(m, t):
    radicand = m.s * (-m.gamma - _quadratic_form(m, 1, t))
    return m.flip(1) * _sqrt(radicand,
                             'L1^2 = s (-gamma - alpha^2 a1 - 2 alpha beta b1 - beta^2 c1)')


def _mix(m, first, second, axis, t):
    """alpha * first + beta * second for two functions of coordinate ``axis``."""
    return (m.alpha * _fn(m, first + str(axis), t) +
            m.beta * _fn(m, second + str(axis), t))


def _t20_case1(m, x, with_arguments):
    l0, l1 = _t20_l0(m, x[0]), _t20_l1(m, x[1])
    covector = (l0, l1, m.alpha, m.beta)
    if not with_arguments:
        return Solution(covector, None, l0 * l1)
    s = m.s

    def over_l0(first, second):
        return lambda t: _over(_mix(m, first, second, 0, t), _t20_l0(m, t), 'L0')

    def over_l1(first, second):
        return lambda t: _over(_mix(m, first, second, 1, t), _t20_l1(m, t), 'L1')

    x_inv = (m.integral('t20:1/L0', 0, x, lambda t: _over(1.0, _t20_l0(m, t), 'L0')) -
             s * m.integral('t20:1/L1', 1, x, lambda t: _over(1.0, _t20_l1(m, t), 'L1')))
    y = (x[2] - m.integral('t20:(a a0 + b b0)/L0', 0, x, over_l0('a', 'b')) -
         s * m.integral('t20:(a a1 + b b1)/L1', 1, x, over_l1('a', 'b')))
    z = (x[3] - m.integral('t20:(a b0 + b c0)/L0', 0, x, over_l0('b', 'c')) -
         s * m.integral('t20:(a b1 + b c1)/L1', 1, x, over_l1('b', 'c')))
    return Solution(covector, (x_inv, y, z), l0 * l1)


def _t20_case2(m, x, with_arguments):
    l1 = _t20_l1(m, x[1])
    covector = (0.0, l1, m.alpha, m.beta)
    if not with_arguments:
        return Solution(covector, None, l1)
    s = m.s

    def over_l1(first, second):
        return lambda t: _over(_mix(m, first, second, 1, t), _t20_l1(m, t), 'L1')

    # x0 enters only as a parameter of the x1 flow
    span = m.integral('t20:1/L1', 1, x, lambda t: _over(1.0, _t20_l1(m, t), 'L1'))
    y = (x[2] - s * _mix(m, 'a', 'b', 0, x[0]) * span -
         s * m.integral('t20:(a a1 + b b1)/L1', 1, x, over_l1('a', 'b')))
    z = (x[3] - s * _mix(m, 'b', 'c', 0, x[0]) * span -
         s * m.integral('t20:(a b1 + b c1)/L1', 1, x, over_l1('b', 'c')))
    return Solution(covector, (x[0], y, z), l1)


def t20_block(m, x):
    """Entries A, B, C of the (x2, x3) block at a point."""
    return [_fn(m, k + '0', x[0]) + _fn(m, k + '1', x[1]) for k in 'abc']


def _t20_case3(m, x, with_arguments):
    covector = (0.0, 0.0, m.alpha, m.beta)
    if not with_arguments:
        return Solution(covector, None, 1.0)
    a, b, c = t20_block(m, x)
    al, be = m.alpha, m.beta
    z = x[2] * (al * b + be * c) - x[3] * (al * a + be * b)
    return Solution(covector, (x[0], x[1], z), 1.0)


# (2.1)

def t21_weight(m, t):
    """alpha f1 + beta, the x1 component of the transport vector."""
    return m.alpha * _fn(m, 'f1', t) + m.beta


def _t21_l0(m, t):
    radicand = m.gamma - _quadratic_form(m, 0, t)
    return m.flip(0) * _sqrt(radicand, 'L0^2 = gamma - alpha^2 a0 - 2 alpha beta b0 - beta^2 c0')


def _t21_l1(m, t):
    return _over(-m.gamma - _quadratic_form(m, 1, t), 2.0 * t21_weight(m, t), 'alpha f1 + beta')


def _t21_case1(m, x, with_arguments):
    l0, l1 = _t21_l0(m, x[0]), _t21_l1(m, x[1])
    w = t21_weight(m, x[1])
    covector = (l0, l1, m.alpha, m.beta)
    if not with_arguments:
        return Solution(covector, None, l0 * w)

    def inv_l0(t):
        return _over(1.0, _t21_l0(m, t), 'L0')

    def y_x1(t):
        flow = _mix(m, 'a', 'b', 1, t) + _fn(m, 'f1', t) * _t21_l1(m, t)
        return flow / t21_weight(m, t)

    def z_x1(t):
        return (_mix(m, 'b', 'c', 1, t) + _t21_l1(m, t)) / t21_weight(m, t)

    x_inv = (m.integral('t21:1/L0', 0, x, inv_l0) -
             m.integral('t21:1/w', 1, x, lambda t: 1.0 / t21_weight(m, t)))
    y = (x[2] - m.integral('t21:(a a0 + b b0)/L0', 0, x,
                           lambda t: _mix(m, 'a', 'b', 0, t) * inv_l0(t)) -
         m.integral('t21:y-flow/w', 1, x, y_x1))
    z = (x[3] - m.integral('t21:(a b0 + b c0)/L0', 0, x,
                           lambda t: _mix(m, 'b', 'c', 0, t) * inv_l0(t)) -
         m.integral('t21:z-flow/w', 1, x, z_x1))
    return Solution(covector, (x_inv, y, z), l0 * w)


def _t21_case2_l0(m, t):
    return m.flip(0) * m.alpha * _sqrt(-_fn(m, 'a0', t), 'L0 = alpha sqrt(-a0)')


def _t21_case2(m, x, with_arguments):
    l0 = _t21_case2_l0(m, x[0])
    l1 = m.sigma - m.alpha * _fn(m, 'b1', x[1])
    covector = (l0, l1, m.alpha, 0.0)
    if not with_arguments:
        return Solution(covector, None, l0)
    y = m.alpha * x[2] + m.integral('t21.2:L0', 0, x, lambda t: _t21_case2_l0(m, t))
    z = x[3] - m.integral('t21.2:(sigma + alpha b0)/L0', 0, x,
                          lambda t: _over(m.sigma + m.alpha * _fn(m, 'b0', t),
                                          _t21_case2_l0(m, t), 'L0'))
    return Solution(covector, (x[1], y, z), l0)


def _t21_case3(m, x, with_arguments):
    l1 = _t21_l1(m, x[1])
    w = t21_weight(m, x[1])
    covector = (0.0, l1, m.alpha, m.beta)
    if not with_arguments:
        return Solution(covector, None, w)
    p, q, r = m.p, m.q, m.r

    def z_x1(t):
        l1_t = _t21_l1(m, t)
        flow = (r + p * (_mix(m, 'a', 'b', 1, t) + _fn(m, 'f1', t) * l1_t) +
                q * (_mix(m, 'b', 'c', 1, t) + l1_t))
        return flow / t21_weight(m, t)

    y = m.alpha * x[2] + m.beta * x[3] + m.integral('t21.3:L1', 1, x, lambda t: _t21_l1(m, t))
    z = p * x[2] + q * x[3] - m.integral('t21.3:z-flow/w', 1, x, z_x1)
    return Solution(covector, (x[0], y, z), w)


def _t21_case4(m, x, with_arguments):
    covector = (0.0, _fn(m, 'L1', x[1]), 0.0, 0.0)
    if not with_arguments:
        return Solution(covector, None, 1.0)
    return Solution(covector, (x[0], x[1], x[2] - x[3] * _fn(m, 'f1', x[1])), 1.0)


# (1.0) and (1.1)

def _t(m, mu, t):
    return _fn(m, 't%d' % mu, t)


def _omega(m, mu, t):
    return _fn(m, 'omega%d' % mu, t)


def _radical(m, mu, t):
    radicand = -m.alpha ** 2 * _omega(m, mu, t) + m.beta * _t(m, mu, t) + m.gamma
    label = 'L%d^2 = -alpha^2 omega%d + beta t%d + gamma' % (mu, mu, mu)
    return m.flip(mu) * _sqrt(radicand, label)


def _sum_over(m, x, axes, key, integrand):
    """Sum of cumulative integrals along each coordinate in ``axes``."""
    return sum(m.integral('%s:%d' % (key, mu), mu, x, integrand(mu)) for mu in axes)


def _inverse_radical(mu_weight):
    """Integrand factory ``weight(mu, t) / L_mu(t)``."""
    def factory(m):
        def per_axis(mu):
            return lambda t: _over(mu_weight(m, mu, t), _radical(m, mu, t), 'L%d' % mu)
        return per_axis
    return factory


_one_over_l = _inverse_radical(lambda m, mu, t: 1.0)
_t_over_l = _inverse_radical(_t)
_omega_over_l = _inverse_radical(_omega)


def _radical_itself(m):
    return lambda mu: (lambda t: _radical(m, mu, t))


def _t10_case1(m, x, with_arguments):
    ls = [_radical(m, mu, x[mu]) for mu in (1, 2, 3)]
    covector = (m.alpha,) + tuple(ls)
    divisor = ls[0] * ls[1] * ls[2]
    if not with_arguments:
        return Solution(covector, None, divisor)
    axes = (1, 2, 3)
    x_inv = x[0] - m.alpha * _sum_over(m, x, axes, 'omega/L', _omega_over_l(m))
    y = _sum_over(m, x, axes, 't/L', _t_over_l(m))
    z = _sum_over(m, x, axes, '1/L', _one_over_l(m))
    return Solution(covector, (x_inv, y, z), divisor)


def _t10_case2(m, x, with_arguments):
    l2, l3 = _radical(m, 2, x[2]), _radical(m, 3, x[3])
    covector = (m.alpha, 0.0, l2, l3)
    if not with_arguments:
        return Solution(covector, None, l2 * l3)
    axes = (2, 3)
    y = m.alpha * x[0] + _sum_over(m, x, axes, 'L', _radical_itself(m))
    z = (_t(m, 1, x[1]) * _sum_over(m, x, axes, '1/L', _one_over_l(m)) -
         _sum_over(m, x, axes, 't/L', _t_over_l(m)))
    return Solution(covector, (x[1], y, z), l2 * l3)


def _t10_case3(m, x, with_arguments):
    l1 = _radical(m, 1, x[1])
    covector = (m.alpha, l1, 0.0, 0.0)
    if not with_arguments:
        return Solution(covector, None, l1)
    y = m.alpha * x[0] + _sum_over(m, x, (1,), 'L', _radical_itself(m))
    return Solution(covector, (x[2], x[3], y), l1)


def t11_l1(m, t):
    """L1 = (beta t1 - alpha^2 omega1 + gamma) / (2 alpha)."""
    numerator = m.beta * _t(m, 1, t) - m.alpha ** 2 * _omega(m, 1, t) + m.gamma
    return _over(numerator, 2.0 * m.alpha, 'alpha')


def _t11_case1(m, x, with_arguments):
    al = m.alpha
    l2, l3 = _radical(m, 2, x[2]), _radical(m, 3, x[3])
    covector = (al, t11_l1(m, x[1]), l2, l3)
    if not with_arguments:
        return Solution(covector, None, l2 * l3)
    axes = (2, 3)
    x_inv = (x[0] -
             m.integral('t11:L1 + alpha omega1', 1, x,
                        lambda t: t11_l1(m, t) + al * _omega(m, 1, t)) / al -
             al * _sum_over(m, x, axes, 'omega/L', _omega_over_l(m)))
    y = (m.integral('t11:t1', 1, x, lambda t: _t(m, 1, t)) / al +
         _sum_over(m, x, axes, 't/L', _t_over_l(m)))
    z = x[1] / al + _sum_over(m, x, axes, '1/L', _one_over_l(m))
    return Solution(covector, (x_inv, y, z), l2 * l3)


def _t11_case2(m, x, with_arguments):
    l1 = _fn(m, 'L1', x[1])
    l2, l3 = _radical(m, 2, x[2]), _radical(m, 3, x[3])
    covector = (0.0, l1, l2, l3)
    if not with_arguments:
        return Solution(covector, None, l2 * l3)
    axes = (2, 3)
    y = _sum_over(m, x, axes, 't/L', _t_over_l(m))
    z = _over(x[0], l1, 'L1') + _sum_over(m, x, axes, '1/L', _one_over_l(m))
    return Solution(covector, (x[1], y, z), l2 * l3)


def _t11_case3(m, x, with_arguments):
    al, ga, p, q = m.alpha, m.gamma, m.p, m.q
    l2 = _radical(m, 2, x[2])
    covector = (al, t11_l1(m, x[1]), l2, 0.0)
    if not with_arguments:
        return Solution(covector, None, l2)

    def z_x1(t):
        return q * (ga / al - al * _omega(m, 1, t) - t11_l1(m, t)) + p * _t(m, 1, t)

    def z_x2(t):
        numerator = q * (ga / al - al * _omega(m, 2, t)) + p * _t(m, 2, t)
        return _over(numerator, _radical(m, 2, t), 'L2')

    y = (al * x[0] + m.integral('t11.3:L1', 1, x, lambda t: t11_l1(m, t)) +
         m.integral('t11.3:L2', 2, x, lambda t: _radical(m, 2, t)))
    z = (q * x[0] + m.integral('t11.3:z-flow1', 1, x, z_x1) / al +
         m.integral('t11.3:z-flow2', 2, x, z_x2))
    return Solution(covector, (x[3], y, z), l2)


# (0.0)

def _t00_radical(m, i, t):
    radicand = m.alpha * _fn(m, 'a%d' % i, t) + m.beta * _fn(m, 'b%d' % i, t) + m.gamma
    return m.flip(i) * _sqrt(radicand, 'L%d^2 = alpha a%d + beta b%d + gamma' % (i, i, i))


def _t00_integrand(m, weight):
    def per_axis(i):
        return lambda t: _over(weight(m, i, t), _t00_radical(m, i, t), 'L%d' % i)
    return per_axis


def _t00_a(m, i, t):
    return _fn(m, 'a%d' % i, t)


def _t00_b(m, i, t):
    return _fn(m, 'b%d' % i, t)


def _t00_case1(m, x, with_arguments):
    ls = tuple(_t00_radical(m, i, x[i]) for i in range(4))
    divisor = ls[0] * ls[1] * ls[2] * ls[3]
    if not with_arguments:
        return Solution(ls, None, divisor)
    axes = (0, 1, 2, 3)
    x_inv = _sum_over(m, x, axes, 't00:1/L', _t00_integrand(m, lambda m, i, t: 1.0))
    y = _sum_over(m, x, axes, 't00:a/L', _t00_integrand(m, _t00_a))
    z = _sum_over(m, x, axes, 't00:b/L', _t00_integrand(m, _t00_b))
    return Solution(ls, (x_inv, y, z), divisor)


def _t00_case2(m, x, with_arguments):
    ls = (0.0,) + tuple(_t00_radical(m, i, x[i]) for i in (1, 2, 3))
    divisor = ls[1] * ls[2] * ls[3]
    if not with_arguments:
        return Solution(ls, None, divisor)
    axes = (1, 2, 3)
    x_inv = (_sum_over(m, x, axes, 't00:a/L', _t00_integrand(m, _t00_a)) -
             _fn(m, 'a0', x[0]) *
             _sum_over(m, x, axes, 't00:1/L', _t00_integrand(m, lambda m, i, t: 1.0)))
    y = _sum_over(m, x, axes, 't00:L', lambda i: (lambda t: _t00_radical(m, i, t)))
    return Solution(ls, (x[0], x_inv, y), divisor)


def _t00_case3(m, x, with_arguments):
    l2, l3 = _t00_radical(m, 2, x[2]), _t00_radical(m, 3, x[3])
    covector = (0.0, 0.0, l2, l3)
    if not with_arguments:
        return Solution(covector, None, l2 * l3)
    y = _sum_over(m, x, (2, 3), 't00:L', lambda i: (lambda t: _t00_radical(m, i, t)))
    return Solution(covector, (x[0], x[1], y), l2 * l3)


SOLVERS = {
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


def solve(model, x, with_arguments=True):
    """Evaluate the model's closed-form solution at ``x``.

    Raises:
        DomainError when a radicand is negative or a denominator or the divisor vanishes
    """
    solution = SOLVERS[(model.css_type, model.case_id)](model, x, with_arguments)
    if abs(solution.divisor) < DENOMINATOR_FLOOR:
        raise DomainError('vanishing divisor %r of the energy density' % solution.divisor)
    return solution
