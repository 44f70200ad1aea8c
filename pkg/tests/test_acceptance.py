"""One test per acceptance criterion.

Each test records a PASS/FAIL line (printed in the pytest terminal summary,
or directly when this file is run as a script).  Tolerances are fixed;
failures are reported, never relaxed.
"""

import math
import random
import time
from fractions import Fraction

from nongauss.experiments import (
    QUARTIC_OPERATORS,
    Verdict,
    c_family,
    fd_residuals_quartic,
    op_name,
    quartic_sweep,
    residual_passes,
    scaling_orbit,
    verify_cubic_formula,
    verify_gaussian,
    verify_random_cubics,
    z2_symmetry_check,
)
from nongauss.poly_core import PolyExactQ, PolyReal, discriminant_explicit, discriminant_resultant
from nongauss.quadrature import BoxSpec, integrate_quadratic_rational
from nongauss.special_fn import beta, constants
from nongauss.symbolic import (
    check_annihilation,
    check_residual_identity,
    cubic_annihilation_specs,
    quartic_residual_specs,
)

_RESULTS: dict[int, str] = {}


def summary_lines() -> list[str]:
    return [_RESULTS[k] for k in sorted(_RESULTS)]


def _record(number: int, ok: bool, detail: str) -> None:
    _RESULTS[number] = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    assert ok, _RESULTS[number]


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def test_criterion_01_cubic_negative_D():
    rec, dt = _timed(lambda: verify_cubic_formula(PolyReal([1, 0, 1, 0])))
    expected = constants().C_minus / 4 ** (1 / 6)
    dev = abs(rec.numeric_integral - expected) / expected
    _record(1, dev <= 1e-8 and dt < 1.0, f"x^3+x rel_dev={dev:.2e} (<=1e-8) time={dt:.2f}s (<1s)")


def test_criterion_02_cubic_positive_D_and_random_sample():
    rec = verify_cubic_formula(PolyReal([1, 0, -1, 0]))
    expected = constants().C_plus / 4 ** (1 / 6)
    dev = abs(rec.numeric_integral - expected) / expected
    records, dt = _timed(lambda: verify_random_cubics(100, seed=20240601))
    worst = max(r.rel_deviation for r in records)
    in_range = all(0.1 <= abs(r.D) <= 100 for r in records)
    ok = dev <= 1e-8 and worst <= 1e-7 and in_range and dt < 120
    _record(2, ok, f"x^3-x rel_dev={dev:.2e}; 100 random max rel_dev={worst:.2e} (<=1e-7) time={dt:.1f}s (<120s)")


def test_criterion_03_beta_relation():
    lhs = math.sqrt(3.0) * beta(1 / 3, 1 / 3)
    rhs = 2.0 ** (1 / 3) * beta(0.5, 1 / 6)
    rel = abs(lhs - rhs) / constants().C_minus
    _record(3, rel <= 1e-12, f"|sqrt3 B(1/3,1/3) - 2^(1/3) B(1/2,1/6)|/C- = {rel:.2e} (<=1e-12)")


def test_criterion_04_gaussian():
    base = abs(integrate_quadratic_rational(1, 0, 1).value - math.pi)
    rng = random.Random(4)
    worst = 0.0
    for _ in range(20):
        while True:
            a, b, c = rng.uniform(0.1, 3), rng.uniform(-3, 3), rng.uniform(0.1, 3)
            if b * b - 4 * a * c < -0.1:
                break
        rec = verify_gaussian(a, b, c)
        worst = max(worst, abs(rec.numeric_integral - rec.predicted) / rec.predicted)
    _record(4, base <= 1e-10 and worst <= 1e-9, f"|I-pi|={base:.2e} (<=1e-10); 20 random max rel_dev={worst:.2e} (<=1e-9)")


def test_criterion_05_symbolic_cubic():
    def run():
        return [check_annihilation(s) for sign in (-1, 1) for s in cubic_annihilation_specs(sign)]

    results, dt = _timed(run)
    ok = all(r.holds and r.witness.is_zero() for r in results) and dt < 1.0
    _record(5, ok, f"{sum(r.holds for r in results)}/{len(results)} cubic identities exact, time={dt:.2f}s (<1s)")


def test_criterion_06_symbolic_quartic():
    def run():
        return [check_residual_identity(s) for sign in (-1, 1) for s in quartic_residual_specs(sign)]

    results, dt = _timed(run)
    ok = len(results) == 12 and all(r.holds and r.witness.is_zero() for r in results) and dt < 10.0
    _record(6, ok, f"{sum(r.holds for r in results)}/12 quartic residual identities exact, time={dt:.2f}s (<10s)")


def test_criterion_07_quartic_refutation():
    def run():
        return quartic_sweep(c_family()), quartic_sweep(scaling_orbit(PolyReal([1, 0, 0, 0, 1])))

    (sweep, control), dt = _timed(run)
    ctrl_spread = (max(control.ratios) - min(control.ratios)) / min(control.ratios)
    ok = (
        sweep.verdict is Verdict.REFUTED
        and sweep.spread > 10 * sweep.error_budget
        and ctrl_spread <= 1e-9
        and dt < 30
    )
    _record(
        7,
        ok,
        f"c-family spread={sweep.spread:.3g} vs 10*budget={10 * sweep.error_budget:.2e}; "
        f"scaling spread={ctrl_spread:.2e} (<=1e-9) time={dt:.2f}s (<30s)",
    )


def test_criterion_08_fd_residuals():
    base = PolyReal([1, 0, 1, 0, 1])
    rec = fd_residuals_quartic(base)
    passed = [residual_passes(rec, op_name(op)) for op in QUARTIC_OPERATORS]
    control_op = (("a", "c"), ("b", "d"))
    ctrl = fd_residuals_quartic(base, operators=[control_op])
    name = op_name(control_op)
    ratio = abs(ctrl.residuals[name]) / ctrl.residuals[f"budget:{name}"]
    worst = max(abs(rec.residuals[op_name(op)]) / rec.residuals[f"budget:{op_name(op)}"] for op in QUARTIC_OPERATORS)
    _record(
        8,
        all(passed) and ratio > 10,
        f"{sum(passed)}/6 residuals within budget (worst |r|/budget={worst:.2f}); control |r|/budget={ratio:.3g} (>10)",
    )


def test_criterion_09_z2_symmetry():
    rng = random.Random(9)
    worst = 0.0
    ok = True
    for _ in range(10):
        spec = BoxSpec(*[rng.uniform(-1.5, 1.5) for _ in range(4)], R=rng.uniform(0.25, 2.0))
        rec = z2_symmetry_check(spec)
        ok &= rec.residuals["abs_difference"] <= rec.residuals["allowed"]
        if rec.residuals["allowed"] > 0:
            worst = max(worst, rec.residuals["abs_difference"] / rec.residuals["allowed"])
    _record(9, ok, f"10 random boxes, worst |F(+)-F(-)|/allowed={worst:.2e} (<=1)")


def test_criterion_10_discriminant_routes():
    rng = random.Random(10)

    def run():
        mismatches = 0
        for _ in range(1000):
            degree = rng.choice((2, 3, 4))
            coeffs = [Fraction(rng.randint(-999, 999), rng.randint(1, 999)) for _ in range(degree + 1)]
            if coeffs[0] == 0:
                coeffs[0] = Fraction(1)
            p = PolyExactQ(coeffs)
            mismatches += discriminant_explicit(p) != discriminant_resultant(p)
        return mismatches

    mismatches, dt = _timed(run)
    _record(10, mismatches == 0 and dt < 30, f"1000 random rationals, {mismatches} mismatches, time={dt:.2f}s (<30s)")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
    print("\n".join(summary_lines()))
    raise SystemExit(0 if all(" PASS " in line for line in summary_lines()) else 1)
