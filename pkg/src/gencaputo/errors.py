"""Exception hierarchy shared by the solvers, operators and CLI."""

from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class PoleError(DomainError):
    """Gamma evaluated at a nonpositive integer."""


class HypothesisError(DomainError):
    """The admissibility condition on ``rho`` is violated.

    Any ``rho > 0`` is allowed when ``a > 0``; when ``a == 0`` the exponent
    must satisfy ``0 < rho <= 1/n`` with ``n = floor(alpha) + 1``.
    """


class SingularityError(DomainError):
    """A power with negative exponent was requested at the origin."""


class ConvergenceError(RuntimeError):
    """An iterative procedure stopped before meeting its tolerance."""


class TruncationError(ValueError):
    """A coefficient table does not cover the range a computation needs."""


class ExpressionError(ValueError):
    """Syntax error in an RHS expression, carrying the character offset."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} at offset {position}"
        super().__init__(message)


class UnknownIdentifierError(ExpressionError):
    pass


class EvaluationError(ArithmeticError):
    """Expression evaluated outside its domain (log of a negative, x/0)."""
