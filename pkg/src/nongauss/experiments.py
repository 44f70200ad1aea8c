"""Reproducible studies built on the quadrature, closed forms and invariants.

Each study returns `ExperimentRecord` objects (one per input) so the CLI can
serialize them uniformly.
"""

from __future__ import annotations

import enum
import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from nongauss.errors import DomainError, StepTooSmall
from nongauss.poly_core import (
    PolyReal,
    discriminant_cubic,
    discriminant_explicit,
    discriminant_quartic,
    invariant_E,
    is_near_degenerate,
    real_roots,
    taylor_shift,
)
from nongauss.quadrature import (
    BoxSpec,
    RenormSpec,
    integrate_box_2d,
    integrate_quadratic_rational,
    integrate_renormalized,
)
from nongauss.special_fn import constants

DEFAULT_TOL = 1e-10


@dataclass
class ExperimentRecord:
    inputs: tuple[float, ...]
    D: float | None = None
    E: float | None = None
    numeric_integral: float | None = None
    numeric_error: float | None = None
    predicted: float | None = None
    rel_deviation: float | None = None
    residuals: dict[str, float] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if (self.predicted is None) != (self.rel_deviation is None):
            raise ValueError("rel_deviation must be present exactly when predicted is")
        for name, value in self.residuals.items():
            if not math.isfinite(value):
                raise ValueError(f"residual {name} is not finite: {value!r}")

    def to_dict(self) -> dict:
        out = {"inputs": list(self.inputs)}
        for key in ("D", "E", "numeric_integral", "numeric_error", "predicted", "rel_deviation"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        if self.residuals:
            out["residuals"] = dict(self.residuals)
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _with_prediction(record: ExperimentRecord, predicted: float) -> ExperimentRecord:
    record.predicted = predicted
    record.rel_deviation = abs(record.numeric_integral - predicted) / abs(predicted)
    return record


# ---------------------------------------------------------------------------
# cubic closed form


def cubic_closed_form(a: float, b: float, c: float, d: float, exponent: float = 1.0 / 6.0) -> float:
    """C-/(-D)^(1/6) for D < 0 and C+/D^(1/6) for D > 0.

    ``exponent`` exists only so negative controls can swap 1/6 for a wrong value.
    """
    D = discriminant_cubic(PolyReal([a, b, c, d]))
    k = constants()
    if D < 0:
        return k.C_minus / (-D) ** exponent
    if D > 0:
        return k.C_plus / D**exponent
    raise DomainError("closed form undefined at D = 0")


def verify_cubic_formula(p: PolyReal, tol: float = DEFAULT_TOL) -> ExperimentRecord:
    if p.degree != 3:
        raise DomainError(f"expected a cubic, got degree {p.degree}")
    D = discriminant_cubic(p)
    if abs(D) < 1e-6 * p.scale**4:
        raise DomainError(f"|D| = {abs(D):.3g} too close to zero for the closed form")
    res = integrate_renormalized(RenormSpec.cubic(p), tol)
    record = ExperimentRecord(
        inputs=p.coeffs,
        D=D,
        numeric_integral=res.value,
        numeric_error=res.abs_error_estimate,
        notes=["D<0: C-/(-D)^(1/6)" if D < 0 else "D>0: C+/D^(1/6)", *res.notes],
    )
    return _with_prediction(record, cubic_closed_form(*p.coeffs))


def random_admissible_cubic(rng: random.Random, d_range: tuple[float, float] = (0.1, 100.0)) -> PolyReal:
    """Coefficients uniform in [-2, 2], resampled until |D| lies in ``d_range``."""
    while True:
        coeffs = [rng.uniform(-2.0, 2.0) for _ in range(4)]
        if coeffs[0] == 0.0:
            continue
        p = PolyReal(coeffs)
        if d_range[0] <= abs(discriminant_cubic(p)) <= d_range[1]:
            return p


def verify_random_cubics(
    n: int, seed: int, tol: float = DEFAULT_TOL, workers: int = 1
) -> list[ExperimentRecord]:
    rng = random.Random(seed)
    family = [random_admissible_cubic(rng) for _ in range(n)]
    return _map(lambda p: verify_cubic_formula(p, tol), family, workers)


def _map(fn: Callable, items: Sequence, workers: int) -> list:
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# Gaussian reduction


def verify_gaussian(a: float, b: float, c: float, tol: float = DEFAULT_TOL) -> ExperimentRecord:
    D = b * b - 4.0 * a * c
    if not (a > 0 and D < 0):
        raise DomainError(f"need a > 0 and b^2 - 4ac < 0, got a={a!r}, D={D!r}")
    res = integrate_quadratic_rational(a, b, c, tol)
    record = ExperimentRecord(
        inputs=(a, b, c), D=D, numeric_integral=res.value, numeric_error=res.abs_error_estimate
    )
    return _with_prediction(record, constants().gaussian_constant / math.sqrt(-D))


# ---------------------------------------------------------------------------
# quartic conjecture sweep


class Verdict(str, enum.Enum):
    REFUTED = "REFUTED"
    CONSISTENT = "CONSISTENT"


@dataclass
class SweepResult:
    records: list[ExperimentRecord]
    ratios: list[float]
    spread: float  # (max - min) / mean of the ratios
    error_budget: float  # summed relative quadrature error bounds
    verdict: Verdict


def is_positive_definite(p: PolyReal) -> bool:
    if p.coeffs[0] <= 0:
        return False
    return len(real_roots(p, require_simple=False)) == 0


def _quartic_record(p: PolyReal, tol: float, allow_indefinite: bool) -> ExperimentRecord:
    if p.degree != 4:
        raise DomainError(f"expected a quartic, got degree {p.degree}")
    if is_near_degenerate(p):
        raise DomainError(f"discriminant of {p.coeffs} is (numerically) zero")
    notes = []
    if not is_positive_definite(p):
        if not allow_indefinite:
            raise DomainError(f"{p.coeffs} is not positive definite")
        notes.append("definition_extends_paper: true")
    res = integrate_renormalized(RenormSpec.quartic(p), tol)
    D = discriminant_quartic(p)
    ratio = res.value * abs(D) ** (1.0 / 12.0)
    return ExperimentRecord(
        inputs=p.coeffs,
        D=D,
        E=invariant_E(p),
        numeric_integral=res.value,
        numeric_error=res.abs_error_estimate,
        residuals={"ratio": ratio},
        notes=notes + [n for n in res.notes if n != "definition_extends_paper"],
    )


def quartic_sweep(
    family: Sequence[PolyReal],
    tol: float = DEFAULT_TOL,
    *,
    allow_indefinite: bool = False,
    workers: int = 1,
) -> SweepResult:
    """Test whether F * |D|^(1/12) is constant over ``family``.

    The conjecture is REFUTED when the relative spread of the ratios exceeds
    ten times the summed relative quadrature error bounds.
    """
    if not family:
        raise DomainError("empty family")
    records = _map(lambda p: _quartic_record(p, tol, allow_indefinite), family, workers)
    ratios = [r.residuals["ratio"] for r in records]
    mean = sum(ratios) / len(ratios)
    spread = (max(ratios) - min(ratios)) / mean
    budget = sum(r.numeric_error / r.numeric_integral for r in records)
    verdict = Verdict.REFUTED if spread > 10.0 * budget else Verdict.CONSISTENT
    return SweepResult(records, ratios, spread, budget, verdict)


def c_family(cs: Sequence[float] = (-1.0, 0.0, 1.0)) -> list[PolyReal]:
    """x^4 + c x^2 + 1."""
    return [PolyReal([1.0, 0.0, c, 0.0, 1.0]) for c in cs]


def scaling_orbit(base: PolyReal, lambdas: Sequence[float] = (1.0, 2.0, 4.0)) -> list[PolyReal]:
    return [PolyReal([lam * x for x in base.coeffs]) for lam in lambdas]


# ---------------------------------------------------------------------------
# finite-difference residuals


class FDOrder(str, enum.Enum):
    CENTRAL_2 = "central-2"
    RICHARDSON_4 = "richardson-4"


@dataclass(frozen=True)
class FDScheme:
    h: float = 1e-2
    order: FDOrder = FDOrder.RICHARDSON_4

    def __post_init__(self):
        if not self.h > 0:
            raise DomainError("FD step must be positive")
        object.__setattr__(self, "order", FDOrder(self.order))


QUARTIC_OPERATORS = (
    (("a", "c"), ("b", "b")),
    (("a", "d"), ("b", "c")),
    (("a", "e"), ("c", "c")),
    (("b", "d"), ("c", "c")),
    (("b", "e"), ("c", "d")),
    (("c", "e"), ("d", "d")),
)
CUBIC_OPERATORS = ((("a", "d"), ("b", "c")), (("b", "b"), ("a", "c")), (("c", "c"), ("b", "d")))
_IDX = {s: i for i, s in enumerate("abcde")}


def op_name(op) -> str:
    (i, j), (k, l) = op
    return f"d{i}d{j}-d{k}d{l}"


@dataclass(frozen=True)
class _Valued:
    value: float
    error: float


class _FDEngine:
    """Second partial derivatives of a scalar function of the coefficients.

    Values are cached per perturbed point so shared stencils are evaluated once.
    """

    def __init__(self, fn: Callable[[tuple[float, ...]], _Valued], base: Sequence[float]):
        self.fn = fn
        self.base = tuple(float(x) for x in base)
        self.cache: dict[tuple[float, ...], _Valued] = {}

    def at(self, offsets: dict[int, float]) -> _Valued:
        point = list(self.base)
        for i, dx in offsets.items():
            point[i] += dx
        key = tuple(point)
        if key not in self.cache:
            self.cache[key] = self.fn(key)
        return self.cache[key]

    def second(self, i: int, j: int, h: float) -> tuple[float, float]:
        """Central second difference and its propagated evaluation error."""
        if i == j:
            fp, f0, fm = self.at({i: h}), self.at({}), self.at({i: -h})
            est = (fp.value - 2.0 * f0.value + fm.value) / (h * h)
            err = (fp.error + 2.0 * f0.error + fm.error) / (h * h)
        else:
            pp = self.at({i: h, j: h})
            pm = self.at({i: h, j: -h})
            mp = self.at({i: -h, j: h})
            mm = self.at({i: -h, j: -h})
            est = (pp.value - pm.value - mp.value + mm.value) / (4.0 * h * h)
            err = (pp.error + pm.error + mp.error + mm.error) / (4.0 * h * h)
        return est, err

    def operator(self, op, h: float, order: FDOrder) -> tuple[float, float, float]:
        """(estimate, truncation bound, noise bound) for d_i d_j - d_k d_l."""
        (i, j), (k, l) = op
        i, j, k, l = _IDX[i], _IDX[j], _IDX[k], _IDX[l]

        def combo(step):
            e1, n1 = self.second(i, j, step)
            e2, n2 = self.second(k, l, step)
            return e1 - e2, n1 + n2

        if order is FDOrder.CENTRAL_2:
            r1, n1 = combo(h)
            r2, n2 = combo(2.0 * h)
            # r(h) - r(2h) ~ -3 c h^2; factor 2 turns the estimate into a bound
            return r1, 2.0 * abs(r1 - r2) / 3.0, n1
        r1, n1 = combo(h)
        r2, n2 = combo(2.0 * h)
        r4, n4 = combo(4.0 * h)
        rich_h = (4.0 * r1 - r2) / 3.0
        rich_2h = (4.0 * r2 - r4) / 3.0
        noise = (4.0 * n1 + n2) / 3.0
        # R(h) - R(2h) ~ -15 c h^4, same safety factor
        return rich_h, 2.0 * abs(rich_h - rich_2h) / 15.0, noise


def _fd_record(
    engine: _FDEngine,
    operators,
    scheme: FDScheme,
    base: Sequence[float],
    noise_limit: float,
) -> ExperimentRecord:
    residuals: dict[str, float] = {}
    budgets: dict[str, float] = {}
    for op in operators:
        est, trunc, noise = engine.operator(op, scheme.h, scheme.order)
        if noise > noise_limit:
            raise StepTooSmall(
                f"quadrature noise {noise:.3g} exceeds {noise_limit:.3g} at h={scheme.h:g}; use a larger step"
            )
        residuals[op_name(op)] = est
        budgets[op_name(op)] = trunc + noise
    record = ExperimentRecord(inputs=tuple(base), residuals=residuals)
    for name, budget in budgets.items():
        record.residuals[f"budget:{name}"] = budget
    return record


def residual_passes(record: ExperimentRecord, name: str, factor: float = 1.0) -> bool:
    return abs(record.residuals[name]) <= factor * record.residuals[f"budget:{name}"]


def fd_residuals_quartic(
    base: PolyReal,
    scheme: FDScheme = FDScheme(),
    tol: float = DEFAULT_TOL,
    *,
    operators=QUARTIC_OPERATORS,
    noise_limit: float = 1e-3,
) -> ExperimentRecord:
    """Finite-difference estimates of the six operators applied to the quartic integral.

    Each residual ``name`` is accompanied by ``budget:name`` = truncation
    estimate + propagated quadrature error; the six operators should
    leave residuals inside their budgets.
    """
    if base.degree != 4:
        raise DomainError("expected a quartic base point")

    def value(coeffs):
        p = PolyReal(coeffs)
        res = integrate_renormalized(RenormSpec.quartic(p), tol)
        if "definition_extends_paper" in res.notes:
            raise DomainError(f"FD stencil left the positive-definite region at {coeffs}")
        return _Valued(res.value, res.abs_error_estimate)

    if not is_positive_definite(base):
        raise DomainError("FD base quartic must be positive definite")
    engine = _FDEngine(value, base.coeffs)
    record = _fd_record(engine, operators, scheme, base.coeffs, noise_limit)
    record.D = discriminant_quartic(base)
    record.E = invariant_E(base)
    return record


def fd_residuals_cubic_closed_form(
    base: PolyReal,
    scheme: FDScheme = FDScheme(h=1e-3),
    *,
    exponent: float = 1.0 / 6.0,
    operators=CUBIC_OPERATORS,
    noise_limit: float = 1e-3,
) -> ExperimentRecord:
    """FD residuals of the three cubic operators on the analytic closed form."""
    if base.degree != 3:
        raise DomainError("expected a cubic base point")
    D0 = discriminant_cubic(base)
    sign0 = math.copysign(1.0, D0)

    def value(coeffs):
        D = discriminant_explicit(PolyReal(coeffs))
        if D == 0 or math.copysign(1.0, D) != sign0:
            raise DomainError(f"FD stencil crosses D = 0 at {coeffs}; reduce h")
        v = cubic_closed_form(*coeffs, exponent=exponent)
        return _Valued(v, 4.0 * 2.0**-52 * abs(v))

    if abs(D0) < 1e-6 * base.scale**4:
        raise DomainError("base discriminant too close to zero")
    engine = _FDEngine(value, base.coeffs)
    record = _fd_record(engine, operators, scheme, base.coeffs, noise_limit)
    record.D = D0
    return record


# ---------------------------------------------------------------------------
# Z2 symmetry of the finite box integral


def z2_symmetry_check(spec: BoxSpec) -> ExperimentRecord:
    plus = integrate_box_2d(spec)
    minus = integrate_box_2d(spec.negated())
    diff = abs(plus.value - minus.value)
    allowed = 2.0 * (plus.abs_error_estimate + minus.abs_error_estimate)
    return ExperimentRecord(
        inputs=(*spec.coeffs, spec.R),
        numeric_integral=plus.value,
        numeric_error=plus.abs_error_estimate,
        residuals={
            "F(+)": plus.value,
            "F(-)": minus.value,
            "abs_difference": diff,
            "allowed": allowed,
        },
        notes=["pass" if diff <= allowed else "FAIL"],
    )


# ---------------------------------------------------------------------------
# E probes


def probe_E(
    p: PolyReal,
    shifts: Sequence[float] = (1.0,),
    scales: Sequence[float] = (2.0,),
) -> ExperimentRecord:
    """E under shifts x -> x + t, coefficient reversal, and weighted scaling.

    All arithmetic is exact on the rational values of the float inputs.
    These are observations about E, not claims taken from anywhere.
    """
    if p.degree != 4:
        raise DomainError("probe_E needs a quartic")
    coeffs = [Fraction(x) for x in p.coeffs]

    def E(cs):
        a, b, c, d, e = cs
        return c * c - 3 * b * d + 12 * a * e

    base = E(coeffs)
    residuals: dict[str, float] = {"E": float(base)}
    notes = []
    for t in shifts:
        shifted = taylor_shift(coeffs, Fraction(t))
        value = E(shifted)
        residuals[f"E(shift {t:g})"] = float(value)
        notes.append(f"shift {t:g}: {'invariant' if value == base else 'CHANGED'}")
    rev = E(coeffs[::-1])
    residuals["E(reversed)"] = float(rev)
    notes.append(f"reversal: {'invariant' if rev == base else 'CHANGED'}")
    for lam in scales:
        lam_q = Fraction(lam)
        weighted = [c * lam_q**k for k, c in enumerate(coeffs)]
        value = E(weighted)
        residuals[f"E(weighted scale {lam:g})"] = float(value)
        notes.append(
            f"weighted scale {lam:g}: {'E*lambda^4' if value == base * lam_q**4 else 'not lambda^4'}"
        )
    return ExperimentRecord(inputs=p.coeffs, E=float(base), residuals=residuals, notes=notes)
