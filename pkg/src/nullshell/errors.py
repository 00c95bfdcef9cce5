"""Exception types shared across the package."""


class NullShellError(Exception):
    """Base class for all package-specific errors."""


class DomainError(NullShellError):
    """Evaluation left the mathematical domain (log of a non-positive
    argument, sqrt at or below zero, division by a zero jet, ...)."""


class InsufficientOrder(NullShellError):
    """An operation requested more derivative orders than are available."""


class SingularMetric(NullShellError):
    """Metric value matrix is numerically singular (condition > 1e12)."""


class SingularLeafMetric(NullShellError):
    """Leaf metric h is numerically singular at the evaluation point."""


class NonPositiveDerivative(NullShellError):
    """The jump function violates the admissibility condition dH/dv > 0."""


class ConformalFactorZero(NullShellError):
    """Conformal factor vanishes at the evaluation point."""


class ConstraintViolation(NullShellError):
    """Builtin family parameters violate one of their defining inequalities."""


class ParseError(NullShellError):
    """Jump-expression text could not be parsed.

    Carries the byte offset of the failure and the set of token kinds that
    would have been accepted there.
    """

    def __init__(self, message, offset, expected=()):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset
        self.expected = frozenset(expected)


class ArityError(NullShellError):
    """A function call has the wrong number of arguments."""


class UnknownIdentifier(NullShellError):
    """An identifier is not part of the declared variable/function set."""


class NotTransversal(NullShellError):
    """Candidate rigging vector is tangent to the boundary at a sample."""


class WrongDimension(NullShellError):
    """Operation restricted to a specific number of dimensions."""


class NotWaveType(NullShellError):
    """Jump function is not of the form a*v + F(z) required here."""


class QuadratureFailure(NullShellError):
    """Numerical integration did not reach the requested tolerance."""


class StepSizeError(NullShellError):
    """Fixed-step integration failed its step-halving consistency check."""


class MissingColumn(NullShellError):
    """A required CSV column is absent."""


class EmptySelection(NullShellError):
    """A data selection matched nothing."""
