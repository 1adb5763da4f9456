# -*- coding: utf-8 -*-
"""Exception types raised across csskit."""


class CsskitError(Exception):
    """Base class for all csskit errors."""


class ConfigError(CsskitError):
    """Malformed or incomplete model configuration."""


class ExprSyntaxError(CsskitError, ValueError):
    """Expression string does not follow the grammar.

    Attributes:
        offset (int) byte offset of the offending token in the source string
    """

    def __init__(self, message, offset):
        super(ExprSyntaxError, self).__init__('%s (at offset %d)' % (message, offset))
        self.offset = offset


class UnknownIdentifier(CsskitError, ValueError):
    """Name that is neither a declared variable nor a known function."""

    def __init__(self, name, offset):
        super(UnknownIdentifier, self).__init__(
            'unknown identifier %r (at offset %d)' % (name, offset))
        self.name = name
        self.offset = offset


class EvalError(CsskitError, ArithmeticError):
    """Evaluation left the real domain or produced a non-finite value."""


class QuadratureNonConvergence(CsskitError):
    pass


class SingularMatrix(CsskitError):
    pass


class DomainError(CsskitError):
    """A closed-form solution is undefined at the requested point."""


class BoxExit(CsskitError):
    """Integration reached the boundary of the working box."""


class GenerationFailure(CsskitError):
    pass
