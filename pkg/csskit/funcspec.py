# -*- coding: utf-8 -*-
"""
Expression trees for the scalar functions that metrics are built from.

Grammar (whitespace is insignificant)::

    expression := term (('+' | '-') term)*
    term       := unary (('*' | '/') unary)*
    unary      := ('-' | '+') unary | power
    power      := primary ('^' unary)?
    primary    := NUMBER | NAME | FUNC '(' expression ')' | '(' expression ')'

``^`` is right-associative and only accepts constant integer or half-integer
exponents; half-integer powers are stored as integer powers of ``sqrt``.
"""
import math
import operator
import re
from collections import namedtuple

import numpy

from .errors import EvalError, ExprSyntaxError, UnknownIdentifier

Const = namedtuple('Const', 'value')
Var = namedtuple('Var', 'name')
Call = namedtuple('Call', 'func arg')
BinOp = namedtuple('BinOp', 'op left right')

FUNCTIONS = ('sin', 'cos', 'exp', 'ln', 'sqrt')
NAMED_CONSTANTS = {'pi': math.pi}
COORDINATES = ('x0', 'x1', 'x2', 'x3')

ZERO = Const(0.0)
ONE = Const(1.0)

Token = namedtuple('Token', 'kind text offset')

_TOKEN_RE = re.compile(r"""
    (?P<space>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/^()])
""", re.VERBOSE)


def _byte_offset(src, pos):
    return len(src[:pos].encode('utf-8'))


def tokenize(src):
    tokens = []
    pos = 0
    while pos < len(src):
        match = _TOKEN_RE.match(src, pos)
        if match is None:
            raise ExprSyntaxError('unexpected character %r' % src[pos], _byte_offset(src, pos))
        if match.lastgroup != 'space':
            tokens.append(Token(match.lastgroup, match.group(), _byte_offset(src, pos)))
        pos = match.end()
    tokens.append(Token('end', '', _byte_offset(src, len(src))))
    return tokens


class _Parser(object):

    def __init__(self, src, variables):
        self.tokens = tokenize(src)
        self.pos = 0
        self.variables = frozenset(variables)

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def at_op(self, *ops):
        tok = self.peek()
        return tok.kind == 'op' and tok.text in ops

    def expect(self, text):
        tok = self.advance()
        if tok.kind != 'op' or tok.text != text:
            raise ExprSyntaxError('expected %r' % text, tok.offset)

    def parse(self):
        expr = self.expression()
        tok = self.peek()
        if tok.kind != 'end':
            raise ExprSyntaxError('unexpected %r' % tok.text, tok.offset)
        return expr

    def operand(self, rule, op):
        # a missing right operand is reported at the operator that needed it
        if self.peek().kind == 'end' or self.at_op('*', '/', '^', ')'):
            raise ExprSyntaxError('operator %r has no right operand' % op.text, op.offset)
        return rule()

    def expression(self):
        left = self.term()
        while self.at_op('+', '-'):
            op = self.advance()
            left = BinOp(op.text, left, self.operand(self.term, op))
        return left

    def term(self):
        left = self.unary()
        while self.at_op('*', '/'):
            op = self.advance()
            left = BinOp(op.text, left, self.operand(self.unary, op))
        return left

    def unary(self):
        if self.at_op('-', '+'):
            op = self.advance()
            arg = self.operand(self.unary, op)
            return Call('neg', arg) if op.text == '-' else arg
        return self.power()

    def power(self):
        base = self.primary()
        if not self.at_op('^'):
            return base
        op = self.advance()
        exponent = fold(self.operand(self.unary, op))
        if not isinstance(exponent, Const) or not _is_half_integer(exponent.value):
            raise ExprSyntaxError('exponent must be a constant integer or half-integer',
                                  op.offset)
        return power(base, exponent.value)

    def primary(self):
        tok = self.advance()
        if tok.kind == 'number':
            return Const(float(tok.text))
        if tok.kind == 'name':
            if tok.text in FUNCTIONS:
                self.expect('(')
                arg = self.expression()
                self.expect(')')
                return Call(tok.text, arg)
            if tok.text in self.variables:
                return Var(tok.text)
            if tok.text in NAMED_CONSTANTS:
                return Const(NAMED_CONSTANTS[tok.text])
            raise UnknownIdentifier(tok.text, tok.offset)
        if tok.kind == 'op' and tok.text == '(':
            inner = self.expression()
            self.expect(')')
            return inner
        raise ExprSyntaxError('expected an operand', tok.offset)


def parse_expr(src, variables):
    """Parse an expression string.

    Args:
        src (str) expression source
        variables (list) names that may appear as free variables

    Returns: expression tree built from Const, Var, Call and BinOp nodes
    """
    if not src or not src.strip():
        raise ExprSyntaxError('empty expression', 0)
    return _Parser(src, variables).parse()


def _is_half_integer(value):
    return float(2 * value).is_integer()


def _is_const(e, value=None):
    return isinstance(e, Const) and (value is None or e.value == value)


# Constructors with constant folding

def add(a, b):
    if _is_const(a, 0.0):
        return b
    if _is_const(b, 0.0):
        return a
    if _is_const(a) and _is_const(b):
        return Const(a.value + b.value)
    return BinOp('+', a, b)


def sub(a, b):
    if _is_const(b, 0.0):
        return a
    if _is_const(a, 0.0):
        return neg(b)
    if _is_const(a) and _is_const(b):
        return Const(a.value - b.value)
    return BinOp('-', a, b)


def mul(a, b):
    if _is_const(a, 0.0) or _is_const(b, 0.0):
        return ZERO
    if _is_const(a, 1.0):
        return b
    if _is_const(b, 1.0):
        return a
    if _is_const(a) and _is_const(b):
        return Const(a.value * b.value)
    return BinOp('*', a, b)


def div(a, b):
    if _is_const(b, 1.0):
        return a
    if _is_const(a) and _is_const(b) and b.value != 0.0:
        return Const(a.value / b.value)
    return BinOp('/', a, b)


def neg(a):
    if _is_const(a):
        return Const(-a.value)
    if isinstance(a, Call) and a.func == 'neg':
        return a.arg
    return Call('neg', a)


def power(base, n):
    n = float(n)
    if n == 0.0:
        return ONE
    if n == 1.0:
        return base
    if not n.is_integer():
        root = Call('sqrt', base)
        return root if n == 0.5 else power(root, 2 * n)
    if _is_const(base):
        try:
            return Const(_finite(base.value ** n))
        except (ZeroDivisionError, OverflowError, EvalError):
            pass
    return BinOp('^', base, Const(n))


def free_variables(e):
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, Call):
        return free_variables(e.arg)
    if isinstance(e, BinOp):
        return free_variables(e.left) | free_variables(e.right)
    return set()


def rename(e, mapping):
    """Substitute variable names according to ``mapping``."""
    if isinstance(e, Var):
        return Var(mapping.get(e.name, e.name))
    if isinstance(e, Call):
        return Call(e.func, rename(e.arg, mapping))
    if isinstance(e, BinOp):
        return BinOp(e.op, rename(e.left, mapping), rename(e.right, mapping))
    return e


def fold(e):
    """Collapse a variable-free tree to a single constant when it evaluates."""
    if isinstance(e, Const) or free_variables(e):
        return e
    try:
        return Const(evaluate(e, {}))
    except EvalError:
        return e


def differentiate(e, var):
    """Exact derivative of ``e`` with respect to ``var``."""
    if isinstance(e, Const):
        return ZERO
    if isinstance(e, Var):
        return ONE if e.name == var else ZERO
    if isinstance(e, Call):
        u = e.arg
        du = differentiate(u, var)
        if _is_const(du, 0.0):
            return ZERO
        if e.func == 'neg':
            return neg(du)
        if e.func == 'sin':
            return mul(Call('cos', u), du)
        if e.func == 'cos':
            return neg(mul(Call('sin', u), du))
        if e.func == 'exp':
            return mul(e, du)
        if e.func == 'ln':
            return div(du, u)
        if e.func == 'sqrt':
            return div(du, mul(Const(2.0), e))
        raise ValueError('unknown function %r' % e.func)
    a, b = e.left, e.right
    if e.op == '^':
        n = b.value
        return mul(mul(Const(n), power(a, n - 1)), differentiate(a, var))
    da = differentiate(a, var)
    db = differentiate(b, var)
    if e.op == '+':
        return add(da, db)
    if e.op == '-':
        return sub(da, db)
    if e.op == '*':
        return add(mul(da, b), mul(a, db))
    if e.op == '/':
        return div(sub(mul(da, b), mul(a, db)), power(b, 2))
    raise ValueError('unknown operator %r' % e.op)


def to_string(e):
    """Fully parenthesised source text that parses back to an equivalent tree."""
    if isinstance(e, Const):
        return repr(e.value) if e.value >= 0 else '(%r)' % e.value
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Call):
        if e.func == 'neg':
            return '(-%s)' % to_string(e.arg)
        return '%s(%s)' % (e.func, to_string(e.arg))
    return '(%s %s %s)' % (to_string(e.left), e.op, to_string(e.right))


# Evaluation

def _finite(value):
    if not math.isfinite(value):
        raise EvalError('non-finite value %r' % value)
    return value


def _exp(v):
    try:
        return math.exp(v)
    except OverflowError:
        raise EvalError('exp overflow at %r' % v)


def _ln(v):
    if v <= 0.0:
        raise EvalError('ln of nonpositive value %r' % v)
    return math.log(v)


def _sqrt(v):
    if v < 0.0:
        raise EvalError('sqrt of negative value %r' % v)
    return math.sqrt(v)


def _divide(a, b):
    if b == 0.0:
        raise EvalError('division by zero')
    return a / b


def _pow(a, n):
    try:
        return a ** n
    except ZeroDivisionError:
        raise EvalError('zero raised to negative power %r' % n)
    except OverflowError:
        raise EvalError('overflow in %r ^ %r' % (a, n))


_UNARY = {
    'neg': operator.neg,
    'sin': math.sin,
    'cos': math.cos,
    'exp': _exp,
    'ln': _ln,
    'sqrt': _sqrt,
}

_BINARY = {
    '+': operator.add,
    '-': operator.sub,
    '*': operator.mul,
    '/': _divide,
    '^': _pow,
}


def compile_expr(e, index):
    """Build a callable evaluating ``e`` on an indexable of variable values.

    Args:
        e expression tree
        index (dict) variable name -> key into the argument passed at call time

    Returns: function of one argument (tuple, list or dict) returning a float
    """
    if isinstance(e, Const):
        value = e.value
        return lambda x: value
    if isinstance(e, Var):
        key = index[e.name]
        return lambda x: x[key]
    if isinstance(e, Call):
        fn = _UNARY[e.func]
        arg = compile_expr(e.arg, index)
        return lambda x: _finite(fn(arg(x)))
    fn = _BINARY[e.op]
    left = compile_expr(e.left, index)
    right = compile_expr(e.right, index)
    return lambda x: _finite(fn(left(x), right(x)))


def evaluate(e, assignment):
    """Evaluate ``e`` with variables taken from the ``assignment`` mapping."""
    names = free_variables(e)
    missing = names - set(assignment)
    if missing:
        raise EvalError('unassigned variables: %s' % ', '.join(sorted(missing)))
    values = dict((name, float(assignment[name])) for name in names)
    return compile_expr(e, dict((name, name) for name in names))(values)


def _interval(bounds):
    lo, hi = float(bounds[0]), float(bounds[1])
    if not lo <= hi:
        raise ValueError('interval [%r, %r] is empty' % (lo, hi))
    return lo, hi


class ScalarFn(object):
    """A smooth scalar function of named variables with exact derivatives.

    Instances are immutable after construction apart from a derivative cache,
    so they can be shared between scan workers.
    """

    def __init__(self, expr, variables, domain, source=None):
        self.expr = expr
        self.variables = tuple(variables)
        self.domain = tuple(_interval(d) for d in domain)
        if len(self.domain) != len(self.variables):
            raise ValueError('need one interval per variable')
        self.source = source if source is not None else to_string(expr)
        unknown = free_variables(expr) - set(self.variables)
        if unknown:
            raise UnknownIdentifier(sorted(unknown)[0], 0)
        self._fn = compile_expr(expr, dict((v, i) for i, v in enumerate(self.variables)))
        self._derivatives = {}

    @classmethod
    def parse(cls, source, variables, domain):
        return cls(parse_expr(source, variables), variables, domain, source=source)

    def __call__(self, *x):
        return self._fn(x)

    def __repr__(self):
        return '%s(%r)' % (type(self).__name__, self.source)

    def _with_expr(self, expr):
        return ScalarFn(expr, self.variables, self.domain)

    def derivative(self, var=None):
        var = var or self.variables[0]
        if var not in self._derivatives:
            self._derivatives[var] = self._with_expr(differentiate(self.expr, var))
        return self._derivatives[var]

    def is_constant(self):
        return not free_variables(self.expr)


class ScalarFn1D(ScalarFn):
    """Function of a single coordinate on a closed interval.

    Sources may name the variable by its coordinate (``x2``) or as plain ``x``.
    """

    def __init__(self, expr, variable, domain, source=None):
        super(ScalarFn1D, self).__init__(expr, (variable,), (domain,), source=source)

    @classmethod
    def parse(cls, source, variable, domain):
        expr = rename(parse_expr(source, [variable, 'x']), {'x': variable})
        return cls(expr, variable, domain, source=source)

    @property
    def variable(self):
        return self.variables[0]

    @property
    def interval(self):
        return self.domain[0]

    @property
    def deriv(self):
        return self.derivative()

    def _with_expr(self, expr):
        return ScalarFn1D(expr, self.variable, self.interval)

    def grid(self, n):
        lo, hi = self.interval
        return numpy.linspace(lo, hi, n)

    def check_finite(self, n):
        """Evaluate on ``n`` evenly spaced points; raises EvalError on failure."""
        return [self(float(t)) for t in self.grid(n)]


class ScalarFn4D(ScalarFn):
    """Function of the four coordinates x0..x3 on a box."""

    def __init__(self, expr, domain, source=None):
        super(ScalarFn4D, self).__init__(expr, COORDINATES, domain, source=source)

    @classmethod
    def parse(cls, source, domain):
        return cls(parse_expr(source, COORDINATES), domain, source=source)

    def _with_expr(self, expr):
        return ScalarFn4D(expr, self.domain)
