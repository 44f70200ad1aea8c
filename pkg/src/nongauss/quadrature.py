"""Quadrature engines for the singular and improper integrals.

The 1-D work is done by a tanh-sinh (double-exponential) rule.  Its nodes
crowd double-exponentially toward both endpoints, which makes algebraic
endpoint singularities such as |x - r|^(-2/3) harmless, provided the
integrand is evaluated from the *distance* to the endpoint rather than
from a rounded abscissa.  The kernel therefore hands every integrand the
triple ``(x, x - lo, hi - x)`` with the two distances computed directly
from the transform.

For the renormalized integrals ``prefactor * int_R |p(x)|^(-q) dx``, the real
line is cut at the real roots of ``p`` and at ``±B`` with ``B`` one plus the
Cauchy root bound.  Each finite piece is integrated in a local coordinate
``delta >= 0`` measured from an anchor (the root end when there is one),
with ``p`` re-expanded in Taylor form about that anchor.  At a root the
constant Taylor term is dropped and ``delta`` factored out, so the integrand
near the singularity is ``delta^(-q) * |c1 + c2 delta + ...|^(-q)`` with no
cancellation.  The two tails use ``x = ±1/u`` on ``u in (0, 1/B]``, turning
``|p|^(-q) dx`` into ``u^(nq - 2) |rev p(u)|^(-q) du``, regular at ``u = 0``
whenever ``nq >= 2`` and integrable whenever ``nq > 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from nongauss.errors import (
    DivergentAtMultipleRoot,
    DomainError,
    ExponentOverflow,
    NoConvergence,
    TailDivergence,
)
from nongauss.poly_core import (
    PolyReal,
    cauchy_bound,
    is_near_degenerate,
    real_roots,
    taylor_coeffs,
)

MAX_LEVEL = 12
MIN_LEVEL = 3
T_MAX = 6.2  # beyond this the tanh-sinh node distances underflow
TOL_RANGE = (1e-12, 1e-3)


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    n_evals: int
    segments: int
    converged: bool
    notes: tuple[str, ...] = ()

    def __add__(self, other: QuadratureResult) -> QuadratureResult:
        return QuadratureResult(
            self.value + other.value,
            self.abs_error_estimate + other.abs_error_estimate,
            self.n_evals + other.n_evals,
            self.segments + other.segments,
            self.converged and other.converged,
            self.notes + tuple(n for n in other.notes if n not in self.notes),
        )

    def scaled(self, factor: float) -> QuadratureResult:
        return QuadratureResult(
            factor * self.value,
            abs(factor) * self.abs_error_estimate,
            self.n_evals,
            self.segments,
            self.converged,
            self.notes,
        )


# ---------------------------------------------------------------------------
# tanh-sinh kernel


def _level_nodes(level: int) -> np.ndarray:
    """Abscissae t introduced at ``level`` (level 0: integers; later: odd multiples of h)."""
    h = 2.0**-level
    if level == 0:
        k = np.arange(-math.floor(T_MAX), math.floor(T_MAX) + 1)
        return k.astype(float)
    j = np.arange(1, math.floor(T_MAX / h) + 1, 2)
    t = j * h
    return np.concatenate([-t[::-1], t])


def _transform(t: np.ndarray, half: float):
    """Distances from the nearer endpoint and weights (without the step h)."""
    v = 0.5 * math.pi * np.sinh(np.abs(t))
    em = np.exp(-2.0 * v)
    # 1 - tanh(v) = 2 em / (1 + em); sech(v)^2 = 4 em / (1 + em)^2
    dist = half * 2.0 * em / (1.0 + em)
    weight = half * 0.5 * math.pi * np.cosh(t) * 4.0 * em / (1.0 + em) ** 2
    return dist, weight


def _tanh_sinh(
    fn: Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    tol: float,
    *,
    max_level: int = MAX_LEVEL,
    min_level: int = MIN_LEVEL,
    strict_interior: bool = False,
) -> QuadratureResult:
    """Integrate fn over (lo, hi); fn receives (x, x - lo, hi - x) arrays.

    Convergence is declared when two consecutive levels differ by at most
    ``tol * max(1, |I|)``; that difference is reported as the error bound.
    """
    if hi <= lo:
        raise DomainError(f"empty interval ({lo}, {hi})")
    half = 0.5 * (hi - lo)
    mid = lo + half
    total = 0.0
    n_evals = 0
    prev = None
    err = math.inf
    value = math.nan
    for level in range(max_level + 1):
        t = _level_nodes(level)
        dist, w = _transform(t, half)
        keep = (dist > 0.0) & (w > 0.0)
        t, dist, w = t[keep], dist[keep], w[keep]
        far = 2.0 * half - dist
        left = t < 0
        dlo = np.where(left, dist, far)
        dhi = np.where(left, far, dist)
        center = t == 0
        dlo[center] = half
        dhi[center] = half
        x = np.where(left, lo + dlo, hi - dhi)
        x[center] = mid
        if strict_interior:
            inside = (x > lo) & (x < hi)
            x, dlo, dhi, w = x[inside], dlo[inside], dhi[inside], w[inside]
        with np.errstate(over="ignore", under="ignore"):
            fx = np.asarray(fn(x, dlo, dhi), dtype=float)
        n_evals += x.size
        if not np.all(np.isfinite(fx)):
            raise NoConvergence(f"integrand not finite on ({lo}, {hi})")
        total += float(np.dot(fx, w))
        value = total * 2.0**-level
        if prev is not None:
            err = abs(value - prev)
            if level >= min_level and err <= tol * max(1.0, abs(value)):
                return QuadratureResult(value, err, n_evals, 1, True)
        prev = value
    return QuadratureResult(value, err, n_evals, 1, False)


def _check_tol(tol: float) -> None:
    if not TOL_RANGE[0] <= tol <= TOL_RANGE[1]:
        raise DomainError(f"tol must lie in [{TOL_RANGE[0]:g}, {TOL_RANGE[1]:g}], got {tol!r}")


def integrate_finite_singular(
    f: Callable,
    lo: float,
    hi: float,
    tol: float = 1e-10,
    *,
    with_distances: bool = False,
    max_level: int = MAX_LEVEL,
) -> QuadratureResult:
    """Tanh-sinh integral of ``f`` over (lo, hi); singularities allowed at the ends.

    By default ``f`` is called with the abscissa array only, and nodes that
    round onto an endpoint are dropped.  With ``with_distances=True`` it is
    called as ``f(x, x - lo, hi - x)``, the distances being exact to working
    precision; use that form whenever the integrand is singular at ``hi`` or
    at a nonzero ``lo``.

    Raises `NoConvergence` (carrying the best estimate in ``.result``) if
    ``MAX_LEVEL`` halvings do not meet ``tol``.
    """
    if with_distances:
        res = _tanh_sinh(f, lo, hi, tol, max_level=max_level)
    else:
        res = _tanh_sinh(lambda x, dl, dh: f(x), lo, hi, tol, max_level=max_level, strict_interior=True)
    if not res.converged:
        raise NoConvergence(
            f"tanh-sinh did not reach tol={tol:g} on ({lo}, {hi}); "
            f"estimate {res.value!r} +/- {res.abs_error_estimate:.3g}",
            result=res,
        )
    return res


# ---------------------------------------------------------------------------
# renormalized integrals


@dataclass(frozen=True)
class RenormSpec:
    """prefactor * int_R |p(x)|^(-q_exponent) dx."""

    p: PolyReal
    q_exponent: Fraction
    prefactor: float = 1.0
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "q_exponent", Fraction(self.q_exponent))
        if self.q_exponent <= 0:
            raise DomainError("q_exponent must be positive")
        if self.p.degree * self.q_exponent <= 1:
            raise TailDivergence(
                f"degree {self.p.degree} x exponent {self.q_exponent} <= 1: the tails diverge"
            )

    @classmethod
    def cubic(cls, p: PolyReal) -> RenormSpec:
        """dx / cbrt(p(x)^2) over the real line."""
        return cls(p, Fraction(2, 3), 1.0)

    @classmethod
    def quartic(cls, p: PolyReal) -> RenormSpec:
        """The reduced quartic integral: sqrt(pi)/2 * dx / (p(x)^2)^(1/4)."""
        return cls(p, Fraction(1, 2), 0.5 * math.sqrt(math.pi))


def _power_fn(q: float, coeffs_low_first: Sequence[float], factor_delta: bool):
    c = np.asarray(coeffs_low_first, dtype=float)
    poly = c[1:] if factor_delta else c

    def g(delta: np.ndarray) -> np.ndarray:
        acc = np.full_like(delta, poly[-1])
        for ck in poly[-2::-1]:
            acc = acc * delta + ck
        out = np.abs(acc) ** (-q)
        if factor_delta:
            out = out * delta ** (-q)
        return out

    return g


def _segment_plan(points: list[float], is_root: list[bool]):
    """Yield (anchor, direction, length, anchor_is_root) for each finite piece."""
    for i in range(len(points) - 1):
        lo, hi = points[i], points[i + 1]
        r_lo, r_hi = is_root[i], is_root[i + 1]
        if r_lo and r_hi:
            half = 0.5 * (hi - lo)
            yield lo, 1.0, half, True
            yield hi, -1.0, half, True
        elif r_hi:
            yield hi, -1.0, hi - lo, True
        else:
            yield lo, 1.0, hi - lo, r_lo


def _integrate_power(
    p: PolyReal,
    q: float,
    tol: float,
    roots: Sequence[float],
    extra_breakpoints: Sequence[float] = (),
) -> QuadratureResult:
    coeffs = list(p.coeffs)
    n = p.degree
    bound = 1.0 + cauchy_bound(coeffs)
    marks = {float(r): True for r in roots}
    for x in (-bound, bound, *extra_breakpoints):
        x = float(x)
        if not -bound <= x <= bound:
            raise DomainError(f"breakpoint {x} outside [-{bound}, {bound}]")
        marks.setdefault(x, False)
    points = sorted(marks)
    plan = list(_segment_plan(points, [marks[x] for x in points]))
    n_pieces = len(plan) + 2
    # per-piece share of the budget; the integrand is positive so shares add up
    piece_tol = tol / n_pieces

    total = None
    for anchor, direction, length, at_root in plan:
        tc = taylor_coeffs(coeffs, anchor)
        tc = [ck * direction**k for k, ck in enumerate(tc)]
        g = _power_fn(q, tc, factor_delta=at_root)
        res = _tanh_sinh(lambda x, dl, dh, g=g: g(dl), 0.0, length, piece_tol)
        total = res if total is None else total + res

    # tails: x = ±1/u, u in (0, 1/bound]
    tail_power = n * q - 2.0
    for sign in (1.0, -1.0):
        rev = [ck * sign ** (n - i) for i, ck in enumerate(coeffs)]  # u^n p(sign/u), low order first
        rev_arr = np.asarray(rev, dtype=float)

        def tail(x, dl, dh, rev_arr=rev_arr):
            acc = np.full_like(dl, rev_arr[-1])
            for ck in rev_arr[-2::-1]:
                acc = acc * dl + ck
            out = np.abs(acc) ** (-q)
            if tail_power != 0.0:
                out = out * dl**tail_power
            return out

        total = total + _tanh_sinh(tail, 0.0, 1.0 / bound, piece_tol)
    return total


def _certified_roots(p: PolyReal, q: float) -> tuple[list[float], tuple[str, ...]]:
    if not is_near_degenerate(p):
        return list(real_roots(p).real_roots), ()
    rs = real_roots(p, require_simple=False)
    for r, m in zip(rs.real_roots, rs.multiplicities):
        if m * q >= 1:
            raise DivergentAtMultipleRoot(
                f"root {r!r} of multiplicity {m} makes |p|^(-{q:g}) non-integrable"
            )
    return list(rs.real_roots), ("near-degenerate discriminant; roots not certified",)


def integrate_renormalized(
    spec: RenormSpec,
    tol: float = 1e-10,
    *,
    extra_breakpoints: Sequence[float] = (),
) -> QuadratureResult:
    """prefactor * int_R |p(x)|^(-q) dx for the spec's polynomial and exponent.

    ``(p^2)^(1/3) = |p|^(2/3)``, so the cubic renormalized integrand is
    ``|p|^(-2/3)`` and the quartic reduced one ``|p|^(-1/2)``.
    """
    _check_tol(tol)
    q = float(spec.q_exponent)
    roots, notes = _certified_roots(spec.p, q)
    if spec.p.degree == 4 and spec.q_exponent == Fraction(1, 2) and roots:
        notes = notes + ("definition_extends_paper",)
    res = _integrate_power(spec.p, q, tol, roots, extra_breakpoints)
    res = QuadratureResult(
        res.value, res.abs_error_estimate, res.n_evals, res.segments, res.converged, res.notes + notes
    ).scaled(spec.prefactor)
    if not res.converged:
        raise NoConvergence(
            f"renormalized integral for {spec.p.coeffs} did not converge "
            f"(estimate {res.value!r} +/- {res.abs_error_estimate:.3g})",
            result=res,
        )
    return res


def integrate_quadratic_rational(a: float, b: float, c: float, tol: float = 1e-10) -> QuadratureResult:
    """int_R dx / (a x^2 + b x + c) for a > 0 and b^2 - 4ac < 0."""
    _check_tol(tol)
    if not a > 0:
        raise DomainError(f"need a > 0, got a={a!r}")
    if not b * b - 4.0 * a * c < 0:
        raise DomainError(f"need b^2 - 4ac < 0, got {b * b - 4.0 * a * c!r}")
    res = _integrate_power(PolyReal([a, b, c]), 1.0, tol, [])
    if not res.converged:
        raise NoConvergence("quadratic rational integral did not converge", result=res)
    return res


# ---------------------------------------------------------------------------
# 2-D finite box


@dataclass(frozen=True)
class BoxSpec:
    a: float
    b: float
    c: float
    d: float
    R: float = 2.0
    tol: float = 1e-10

    def __post_init__(self):
        if not self.R > 0:
            raise DomainError(f"R must be positive, got {self.R!r}")
        if not self.tol > 0:
            raise DomainError(f"tol must be positive, got {self.tol!r}")

    @property
    def coeffs(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    def negated(self) -> BoxSpec:
        return BoxSpec(-self.a, -self.b, -self.c, -self.d, self.R, self.tol)


GAUSS_ORDER = 16
MAX_PANELS = 64
EXP_LIMIT = 700.0


def _symmetric_rule(R: float, panels: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre on [-R, R]; the node set is mirror-symmetric."""
    gx, gw = np.polynomial.legendre.leggauss(GAUSS_ORDER)
    edges = np.linspace(-R, R, panels + 1)
    edges[panels // 2] = 0.0
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    x = (mid[:, None] + half[:, None] * gx[None, :]).ravel()
    w = (half[:, None] * gw[None, :]).ravel()
    return x, w


def integrate_box_2d(spec: BoxSpec) -> QuadratureResult:
    """int int over [-R, R]^2 of exp(-(a x^3 + b x^2 y + c x y^2 + d y^3)).

    Panel counts double (2, 4, 8, ...) until consecutive tensor-product
    estimates agree to ``tol * max(1, |F|)``.
    """
    a, b, c, d = spec.coeffs
    prev = None
    n_evals = 0
    value = math.nan
    err = math.inf
    panels = 2
    while panels <= MAX_PANELS:
        x, w = _symmetric_rule(spec.R, panels)
        X, Y = np.meshgrid(x, x, indexing="ij")
        form = ((a * X + b * Y) * X + c * Y * Y) * X + d * Y**3
        if np.max(-form) > EXP_LIMIT:
            raise ExponentOverflow(
                f"exponent reaches {float(np.max(-form)):.1f} on [-{spec.R}, {spec.R}]^2"
            )
        value = float(w @ np.exp(-form) @ w)
        n_evals += X.size
        if prev is not None:
            err = abs(value - prev)
            if err <= spec.tol * max(1.0, abs(value)):
                return QuadratureResult(value, err, n_evals, panels * panels, True)
        prev = value
        panels *= 2
    raise NoConvergence(
        f"box integral did not converge with {MAX_PANELS}^2 panels",
        result=QuadratureResult(value, err, n_evals, MAX_PANELS**2, False),
    )
