"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: ``ParseError`` -> 1,
``ConstraintViolation`` and its subclasses -> 2, ``InvariantBreach`` -> 3.
"""


class SolidError(Exception):
    """Base class; carries an optional source position."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self):
        if self.line is None:
            return self.message
        return f"{self.line}:{self.column}: {self.message}"


class ParseError(SolidError, ValueError):
    pass


class ConstraintViolation(SolidError, ValueError):
    """A value does not satisfy the invariants of its type."""


class NotAPoint(ConstraintViolation):
    pass


class NotASubset(ConstraintViolation):
    pass


class IncompatibleCharts(ConstraintViolation):
    """Two charts give one prime two different stalks."""


class SizeBound(ConstraintViolation):
    """A finite ring table exceeds the configured order bound."""


class InvariantBreach(SolidError, AssertionError):
    """Something that the theory says cannot happen did happen."""


class LemmaViolation(InvariantBreach):
    pass


class AxiomViolation(InvariantBreach):
    pass


class Unrepresentable(InvariantBreach):
    pass
