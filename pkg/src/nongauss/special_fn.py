"""Gamma and Beta on the positive axis, plus the closed-form cubic constants."""

from __future__ import annotations

import math
from dataclasses import dataclass

from nongauss.errors import DomainError

# Lanczos approximation, g = 607/128 with 15 terms (Godfrey's coefficient set).
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_COEF = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


def _lanczos_series(z: float) -> float:
    # z = x - 1 for Gamma(x)
    acc = _LANCZOS_COEF[0]
    for k in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[k] / (z + k)
    return acc


def _check_positive(x: float, name: str = "x") -> None:
    if not x > 0 or not math.isfinite(x):
        raise DomainError(f"{name} must be a positive finite real, got {x!r}")


def gamma(x: float) -> float:
    """Gamma function for x > 0.

    Arguments below 1/2 are lifted with Gamma(x) = Gamma(x + 1) / x, so the
    Lanczos sum is only ever evaluated where it is well conditioned.
    """
    _check_positive(x)
    if x < 0.5:
        return gamma(x + 1.0) / x
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    # split the power so t**(z+0.5) cannot overflow before exp(-t) damps it
    half = t ** (0.5 * (z + 0.5))
    return _SQRT_2PI * half * (half * math.exp(-t)) * _lanczos_series(z)


def log_gamma(x: float) -> float:
    _check_positive(x)
    if x < 0.5:
        return log_gamma(x + 1.0) - math.log(x)
    z = x - 1.0
    t = z + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (z + 0.5) * math.log(t) - t + math.log(_lanczos_series(z))


def beta(p: float, q: float) -> float:
    """B(p, q) = Gamma(p) Gamma(q) / Gamma(p + q), evaluated in log space."""
    _check_positive(p, "p")
    _check_positive(q, "q")
    return math.exp(log_gamma(p) + log_gamma(q) - log_gamma(p + q))


@dataclass(frozen=True)
class SpecialConstants:
    C_minus: float
    C_plus: float
    gaussian_constant: float


def constants() -> SpecialConstants:
    """C- = 2^(1/3) B(1/2, 1/6), C+ = 3 B(1/3, 1/3), Gaussian constant 2 B(1/2, 1/2) = 2 pi."""
    return SpecialConstants(
        C_minus=2.0 ** (1.0 / 3.0) * beta(0.5, 1.0 / 6.0),
        C_plus=3.0 * beta(1.0 / 3.0, 1.0 / 3.0),
        gaussian_constant=2.0 * beta(0.5, 0.5),
    )
