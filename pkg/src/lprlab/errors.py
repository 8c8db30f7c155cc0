"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of the operation."""


class PreconditionError(ValueError):
    """A documented precondition of an operation was violated."""


class NumericalError(ArithmeticError):
    """A numerical procedure (quadrature, refinement loop) failed to converge."""
