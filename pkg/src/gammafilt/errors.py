"""Exception types raised across the package."""

from __future__ import annotations


class GammafiltError(Exception):
    """Base class for all package errors."""


class InversionOfNonUnit(GammafiltError, ArithmeticError):
    pass


class CompositionDivergence(GammafiltError, ArithmeticError):
    pass


class NonUnitDenominator(GammafiltError, ArithmeticError):
    pass


class ZeroLeadingCoefficient(GammafiltError, ValueError):
    pass


class InvalidDiagram(GammafiltError, ValueError):
    pass


class ParityViolation(GammafiltError, RuntimeError):
    """1 + m - r came out odd; the boundary traversal is broken."""


class ParseError(GammafiltError, ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnsupportedGenus(GammafiltError, ValueError):
    pass


class SizeLimitExceeded(GammafiltError, ValueError):
    pass


class DegenerateDistribution(GammafiltError, ValueError):
    pass


class ConvergenceFailure(GammafiltError, RuntimeError):
    pass


class DegenerateCritical(GammafiltError, RuntimeError):
    pass


class DominanceViolation(GammafiltError, RuntimeError):
    pass


class MethodDisagreement(GammafiltError, RuntimeError):
    pass
