"""Univariate polynomials, discriminants and real-root isolation.

Coefficients are stored highest degree first, so a cubic is ``(a, b, c, d)``
for ``a*x**3 + b*x**2 + c*x + d`` and a quartic is ``(a, b, c, d, e)``.

Discriminants come from two independent routes: the explicit expansions
(`discriminant_cubic`, `discriminant_quartic`) and the Sylvester resultant
of ``p`` and ``p'`` evaluated exactly over the rationals
(`discriminant_resultant`).  The explicit routes are written against plain
arithmetic operators, so feeding them ``Fraction`` coefficients gives exact
results and feeding them floats gives floating-point results.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Sequence

from nongauss.errors import DegreeMismatch, DomainError, IllConditioned, ZeroLeadingCoefficient

# |D| below DISC_REL_THRESHOLD * scale**(2n-2) counts as a repeated root.
DISC_REL_THRESHOLD = 1e-10


def _check_shape(coeffs: tuple) -> None:
    if len(coeffs) < 1:
        raise DegreeMismatch("a polynomial needs at least one coefficient")
    if len(coeffs) > 1 and coeffs[0] == 0:
        raise ZeroLeadingCoefficient(
            f"leading coefficient of a degree-{len(coeffs) - 1} polynomial is zero"
        )


@dataclass(frozen=True)
class PolyReal:
    """Dense real polynomial, coefficients highest degree first."""

    coeffs: tuple[float, ...]
    degree: int = field(init=False)

    def __init__(self, coeffs: Sequence[float]):
        c = tuple(float(x) for x in coeffs)
        if not all(math.isfinite(x) for x in c):
            raise DomainError(f"non-finite coefficient in {c}")
        _check_shape(c)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "degree", len(c) - 1)

    def __call__(self, x):
        return horner(self.coeffs, x)

    def derivative(self) -> PolyReal:
        return PolyReal(derivative_coeffs(self.coeffs)) if self.degree > 0 else self

    def exact(self) -> PolyExactQ:
        """Exact rational mirror (every double is a dyadic rational)."""
        return PolyExactQ([Fraction(x) for x in self.coeffs])

    @property
    def scale(self) -> float:
        return max(abs(x) for x in self.coeffs)


@dataclass(frozen=True)
class PolyExactQ:
    coeffs: tuple[Fraction, ...]
    degree: int = field(init=False)

    def __init__(self, coeffs: Sequence):
        c = tuple(_to_fraction(x) for x in coeffs)
        _check_shape(c)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "degree", len(c) - 1)

    def __call__(self, x):
        return horner(self.coeffs, x)

    def derivative(self) -> PolyExactQ:
        return PolyExactQ(derivative_coeffs(self.coeffs)) if self.degree > 0 else self

    def shifted(self, t) -> PolyExactQ:
        return PolyExactQ(taylor_shift(self.coeffs, _to_fraction(t)))

    def to_real(self) -> PolyReal:
        return PolyReal([float(x) for x in self.coeffs])


def _to_fraction(x) -> Fraction:
    if isinstance(x, (Fraction, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise DomainError(f"non-finite coefficient {x!r}")
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def horner(coeffs: Sequence, x):
    acc = coeffs[0] * 0 + coeffs[0]
    for c in coeffs[1:]:
        acc = acc * x + c
    return acc


def derivative_coeffs(coeffs: Sequence) -> list:
    n = len(coeffs) - 1
    return [c * (n - i) for i, c in enumerate(coeffs[:-1])]


def taylor_shift(coeffs: Sequence, t) -> list:
    """Coefficients of p(x + t), highest degree first (repeated synthetic division)."""
    work = list(coeffs)
    n = len(work) - 1
    for i in range(n):
        for j in range(1, n + 1 - i):
            work[j] = work[j] + t * work[j - 1]
    return work


def taylor_coeffs(coeffs: Sequence, x0) -> list:
    """Taylor coefficients of p about x0, lowest order first: p(x0 + h) = sum c_k h**k."""
    return list(reversed(taylor_shift(coeffs, x0)))


# ---------------------------------------------------------------------------
# discriminants


def _disc2(a, b, c):
    return b * b - 4 * a * c


def _disc3(a, b, c, d):
    return (
        b * b * c * c
        + 18 * a * b * c * d
        - 4 * a * c**3
        - 4 * b**3 * d
        - 27 * a * a * d * d
    )


def _disc4(a, b, c, d, e):
    return (
        256 * a**3 * e**3
        - 4 * b**3 * d**3
        - 27 * a**2 * d**4
        - 27 * b**4 * e**2
        - 128 * a**2 * c**2 * e**2
        + b**2 * c**2 * d**2
        + 16 * a * c**4 * e
        - 4 * a * c**3 * d**2
        - 4 * b**2 * c**3 * e
        + 144 * a**2 * c * d**2 * e
        - 6 * a * b**2 * d**2 * e
        + 144 * a * b**2 * c * e**2
        - 192 * a**2 * b * d * e**2
        + 18 * a * b * c * d**3
        + 18 * b**3 * c * d * e
        - 80 * a * b * c**2 * d * e
    )


def _require_degree(p, allowed: tuple[int, ...]) -> None:
    if p.degree not in allowed:
        raise DegreeMismatch(f"expected degree in {allowed}, got {p.degree}")


def discriminant_cubic(p: PolyReal | PolyExactQ):
    """b²c² + 18abcd − 4ac³ − 4b³d − 27a²d², in the coefficient type of ``p``."""
    _require_degree(p, (3,))
    return _disc3(*p.coeffs)


def discriminant_quartic(p: PolyReal | PolyExactQ):
    _require_degree(p, (4,))
    return _disc4(*p.coeffs)


def discriminant_explicit(p: PolyReal | PolyExactQ):
    _require_degree(p, (2, 3, 4))
    return {2: _disc2, 3: _disc3, 4: _disc4}[p.degree](*p.coeffs)


def sylvester_matrix(f: Sequence, g: Sequence) -> list[list]:
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    zero = f[0] * 0
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(f) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(g) + [zero] * (size - n - 1 - i))
    return rows


def bareiss_determinant(matrix: Sequence[Sequence]):
    """Fraction-free Gaussian elimination; exact for integer or rational entries."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return a[k][k] * 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                if prev == 1:
                    a[i][j] = num
                elif isinstance(num, int) and isinstance(prev, int):
                    a[i][j] = num // prev  # exact by Sylvester's identity
                else:
                    a[i][j] = num / prev
            a[i][k] = a[i][k] * 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def resultant(f: Sequence, g: Sequence):
    return bareiss_determinant(sylvester_matrix(f, g))


def _discriminant_via_resultant(coeffs: Sequence):
    n = len(coeffs) - 1
    res = resultant(coeffs, derivative_coeffs(coeffs))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res / coeffs[0]


def discriminant_resultant(p: PolyExactQ | PolyReal) -> Fraction:
    """(−1)^(n(n−1)/2) / a_n · Res(p, p′), computed exactly over ℚ."""
    if isinstance(p, PolyReal):
        p = p.exact()
    _require_degree(p, (2, 3, 4))
    return Fraction(_discriminant_via_resultant(p.coeffs))


def invariant_E(p: PolyReal | PolyExactQ):
    """c² − 3bd + 12ae for a quartic (a, b, c, d, e)."""
    _require_degree(p, (4,))
    a, b, c, d, e = p.coeffs
    return c * c - 3 * b * d + 12 * a * e


class DiscRoute(str, enum.Enum):
    EXPLICIT = "explicit-formula"
    RESULTANT = "resultant"


@dataclass(frozen=True)
class DiscriminantReport:
    D: float
    D_exact: Fraction | None
    E: float | None
    route: DiscRoute


def discriminant_report(p: PolyReal | PolyExactQ, route: DiscRoute = DiscRoute.EXPLICIT) -> DiscriminantReport:
    exact = p if isinstance(p, PolyExactQ) else p.exact()
    if route is DiscRoute.EXPLICIT:
        d_exact = Fraction(discriminant_explicit(exact))
    else:
        d_exact = discriminant_resultant(exact)
    e = float(invariant_E(exact)) if exact.degree == 4 else None
    return DiscriminantReport(D=float(d_exact), D_exact=d_exact, E=e, route=route)


def is_near_degenerate(p: PolyReal, threshold: float = DISC_REL_THRESHOLD) -> bool:
    """True when |D| < threshold · scale^(2n−2) (floating-point explicit route)."""
    n = p.degree
    if n < 2:
        return False
    disc = discriminant_explicit(p)
    return abs(disc) < threshold * p.scale ** (2 * n - 2)


# ---------------------------------------------------------------------------
# real roots


@dataclass(frozen=True)
class RootSet:
    real_roots: tuple[float, ...]
    multiplicities: tuple[int, ...]
    certified_simple: bool

    def __len__(self) -> int:
        return len(self.real_roots)


def cauchy_bound(coeffs: Sequence[float]) -> float:
    lead = abs(coeffs[0])
    return 1.0 + max((abs(c) / lead for c in coeffs[1:]), default=0.0)


def _bisect(coeffs, lo, hi, flo, tol):
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = horner(coeffs, mid)
        if fm == 0.0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    # Newton polish, accepted only while it stays inside the bracket
    dcoeffs = derivative_coeffs(coeffs)
    for _ in range(4):
        dfx = horner(dcoeffs, x)
        if dfx == 0.0:
            break
        step = horner(coeffs, x) / dfx
        nx = x - step
        if not lo <= nx <= hi or nx == x:
            break
        x = nx
    return x


def _sign_change_roots(coeffs: list[float], lo: float, hi: float, tol: float) -> list[float]:
    """Odd-multiplicity roots in [lo, hi].

    Critical points (found recursively) cut [lo, hi] into monotone pieces,
    each holding at most one sign change.
    """
    n = len(coeffs) - 1
    if n <= 0:
        return []
    if n == 1:
        r = -coeffs[1] / coeffs[0]
        return [r] if lo <= r <= hi else []
    crit = _sign_change_roots(derivative_coeffs(coeffs), lo, hi, tol)
    pts = [lo] + [c for c in crit if lo < c < hi] + [hi]
    roots: list[float] = []
    for left, right in zip(pts[:-1], pts[1:]):
        fl, fr = horner(coeffs, left), horner(coeffs, right)
        if fl == 0.0:
            if not roots or roots[-1] != left:
                roots.append(left)
            continue
        if fr == 0.0:
            continue
        if (fl < 0) != (fr < 0):
            roots.append(_bisect(coeffs, left, right, fl, tol))
    if horner(coeffs, hi) == 0.0 and (not roots or roots[-1] != hi):
        roots.append(hi)
    return roots


def _multiplicity(coeffs: list[float], x: float, tol: float) -> int:
    """Number of leading Taylor coefficients at x that vanish to within tol·scale."""
    tc = taylor_coeffs(coeffs, x)
    scale = max(abs(c) for c in coeffs)
    m = 0
    for c in tc[:-1]:
        if abs(c) <= max(tol, 1e-8) * scale:
            m += 1
        else:
            break
    return max(m, 1)


def real_roots(
    p: PolyReal,
    tol: float = 1e-14,
    *,
    require_simple: bool = True,
    threshold: float = DISC_REL_THRESHOLD,
) -> RootSet:
    """Locate every real root of ``p`` to absolute accuracy ``tol``.

    With ``require_simple`` the discriminant certifies that all roots are
    simple; inputs failing the certificate raise `IllConditioned`.  Without
    it, a best-effort root set is returned with estimated multiplicities
    and ``certified_simple=False`` whenever the certificate is missing.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    if p.degree < 1:
        raise DegreeMismatch("real_roots needs degree >= 1")
    if p.degree > 4:
        raise DegreeMismatch("degrees above 4 are not supported")
    coeffs = list(p.coeffs)
    degenerate = is_near_degenerate(p, threshold)
    if degenerate and require_simple:
        raise IllConditioned(
            f"|discriminant| of {p.coeffs} is below {threshold:g} x scale^{2 * p.degree - 2}"
        )
    bound = cauchy_bound(coeffs)
    # the Cauchy bound is strict, so neither endpoint is a root
    found = _sign_change_roots(coeffs, -bound, bound, tol)
    if not degenerate:
        return RootSet(tuple(found), tuple(1 for _ in found), True)

    # touching roots do not change sign; look for them at critical points
    candidates = list(found)
    for c in _sign_change_roots(derivative_coeffs(coeffs), -bound, bound, tol):
        if abs(horner(coeffs, c)) <= 1e-8 * p.scale and all(abs(c - r) > 1e-6 for r in candidates):
            candidates.append(c)
    candidates.sort()
    mults = tuple(_multiplicity(coeffs, r, tol) for r in candidates)
    return RootSet(tuple(candidates), mults, False)
