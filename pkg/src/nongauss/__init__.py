"""Numerical and exact-symbolic checks for non-Gaussian integrals of binary cubic and quartic forms."""

from nongauss.errors import (
    DegreeMismatch,
    DivergentAtMultipleRoot,
    DomainError,
    ExponentOverflow,
    IdentityFailure,
    IllConditioned,
    NonGaussError,
    NoConvergence,
    ParseError,
    StepTooSmall,
    TailDivergence,
    ZeroLeadingCoefficient,
)

__version__ = "0.1.0"

__all__ = [
    "DegreeMismatch",
    "DivergentAtMultipleRoot",
    "DomainError",
    "ExponentOverflow",
    "IdentityFailure",
    "IllConditioned",
    "NonGaussError",
    "NoConvergence",
    "ParseError",
    "StepTooSmall",
    "TailDivergence",
    "ZeroLeadingCoefficient",
]
