"""Exception types raised across the package."""


class DomainError(ValueError):
    """A parameter lies outside the domain where the formula is defined."""


class PoleError(ZeroDivisionError):
    """A hypergeometric denominator parameter hit zero before termination."""


class TruncationError(ArithmeticError):
    """A series could not be truncated within its term cap."""


class AccuracyError(ArithmeticError):
    """A quadrature did not converge under node doubling."""


class DivergenceError(DomainError):
    """An integral does not converge for the requested weight."""


class IrreducibilityError(ArithmeticError):
    """A vanishing off-diagonal element breaks the three-term recursion."""


class NotFactorizableError(ArithmeticError):
    """A tridiagonal operator admits no ladder factorization H = A^dagger A."""


class StepError(DomainError):
    """A finite-difference stencil leaves the domain of the function."""
