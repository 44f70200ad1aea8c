"""Exception hierarchy.

Domain errors subclass ``ValueError`` so callers that only care about bad
input can catch that; numerical failures subclass ``ArithmeticError``.
"""


class NonGaussError(Exception):
    """Base class for every error raised by this package."""


class DomainError(NonGaussError, ValueError):
    pass


class DegreeMismatch(DomainError):
    pass


class ZeroLeadingCoefficient(DomainError):
    pass


class ParseError(DomainError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class IllConditioned(NonGaussError, ArithmeticError):
    """Discriminant too close to zero to certify simple roots."""


class DivergentAtMultipleRoot(DomainError):
    pass


class TailDivergence(DomainError):
    pass


class NoConvergence(NonGaussError, ArithmeticError):
    def __init__(self, message: str, result=None):
        super().__init__(message)
        self.result = result


class ExponentOverflow(NonGaussError, ArithmeticError):
    """Exponent of e^(-form) leaves the double-precision safe range."""


class StepTooSmall(NonGaussError, ArithmeticError):
    """Finite-difference step amplifies quadrature noise beyond the budget."""


class IdentityFailure(NonGaussError):
    pass
