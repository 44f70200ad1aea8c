import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nongauss.errors import DegreeMismatch, IllConditioned, ZeroLeadingCoefficient
from nongauss.poly_core import (
    DiscRoute,
    PolyExactQ,
    PolyReal,
    cauchy_bound,
    discriminant_cubic,
    discriminant_explicit,
    discriminant_quartic,
    discriminant_report,
    discriminant_resultant,
    horner,
    invariant_E,
    real_roots,
    taylor_shift,
)


@pytest.mark.parametrize(
    ("coeffs", "expected"),
    [((1, 0, 1, 0), -4), ((1, 0, -1, 0), 4), ((1, -3, 3, -1), 0)],
)
def test_discriminant_cubic_examples(coeffs, expected):
    assert discriminant_cubic(PolyReal(coeffs)) == expected
    assert discriminant_cubic(PolyExactQ(coeffs)) == expected


def test_discriminant_quartic_examples():
    assert discriminant_quartic(PolyReal([1, 0, 0, 0, 1])) == 256
    assert discriminant_quartic(PolyExactQ([1, 0, 2, 0, 1])) == 0
    assert discriminant_resultant(PolyExactQ([1, 0, 2, 0, 1])) == 0


@pytest.mark.parametrize("c", [Fraction(-3), Fraction(-1), Fraction(0), Fraction(1, 2), Fraction(7, 3)])
def test_quartic_c_family_closed_form(c):
    # b = d = 0, a = e = 1 leaves 256 - 128c^2 + 16c^4 = 16(c^2 - 4)^2
    p = PolyExactQ([1, 0, c, 0, 1])
    assert discriminant_quartic(p) == 16 * (c * c - 4) ** 2
    assert discriminant_resultant(p) == 16 * (c * c - 4) ** 2


@pytest.mark.parametrize(
    ("coeffs", "expected"),
    [((1, 0, 1, 0), -4), ((1, 0, 0, 0, 1), 256), ((1, 0, 1), -4), ((2, 3, 5), 9 - 40)],
)
def test_discriminant_resultant_examples(coeffs, expected):
    assert discriminant_resultant(PolyExactQ(coeffs)) == expected


def test_resultant_rejects_other_degrees():
    with pytest.raises(DegreeMismatch):
        discriminant_resultant(PolyExactQ([1, 2]))
    with pytest.raises(DegreeMismatch):
        discriminant_resultant(PolyExactQ([1, 0, 0, 0, 0, 1]))


def test_shape_errors():
    with pytest.raises(ZeroLeadingCoefficient):
        PolyReal([0, 1, 1, 1])
    with pytest.raises(DegreeMismatch):
        discriminant_cubic(PolyReal([1, 0, 0, 0, 1]))
    with pytest.raises(DegreeMismatch):
        discriminant_quartic(PolyReal([1, 0, 1, 0]))
    with pytest.raises(DegreeMismatch):
        invariant_E(PolyReal([1, 0, 1, 0]))


@pytest.mark.parametrize(
    ("coeffs", "expected"),
    [((1, 0, 0, 0, 1), 12), ((1, 1, 1, 1, 1), 10)],
)
def test_invariant_E_examples(coeffs, expected):
    assert invariant_E(PolyReal(coeffs)) == expected


@given(st.fractions(min_value=-50, max_value=50, max_denominator=20))
def test_invariant_E_c_family(c):
    assert invariant_E(PolyExactQ([1, 0, c, 0, 1])) == c * c + 12


def _rand_q(rng):
    return Fraction(rng.randint(-99, 99), rng.randint(1, 99))


def test_routes_agree_on_random_rationals():
    rng = random.Random(20260101)
    for _ in range(300):
        degree = rng.choice((2, 3, 4))
        coeffs = [_rand_q(rng) for _ in range(degree + 1)]
        if coeffs[0] == 0:
            coeffs[0] = Fraction(1)
        p = PolyExactQ(coeffs)
        assert discriminant_explicit(p) == discriminant_resultant(p)


def test_report_routes_and_E_field():
    p = PolyReal([1, 0, 0, 0, 1])
    explicit = discriminant_report(p, DiscRoute.EXPLICIT)
    resultant = discriminant_report(p, DiscRoute.RESULTANT)
    assert explicit.D_exact == resultant.D_exact == 256
    assert explicit.E == 12.0
    assert discriminant_report(PolyReal([1, 0, 1, 0])).E is None


coeff = st.fractions(min_value=-10, max_value=10, max_denominator=12)
scale = st.fractions(min_value=-5, max_value=5, max_denominator=7).filter(lambda x: x != 0)


@given(st.lists(coeff, min_size=4, max_size=4).filter(lambda c: c[0] != 0), scale)
def test_cubic_homogeneity(c, lam):
    p = PolyExactQ(c)
    q = PolyExactQ([lam * x for x in c])
    assert discriminant_cubic(q) == lam**4 * discriminant_cubic(p)


@given(st.lists(coeff, min_size=5, max_size=5).filter(lambda c: c[0] != 0), scale)
def test_quartic_homogeneity(c, lam):
    p = PolyExactQ(c)
    q = PolyExactQ([lam * x for x in c])
    assert discriminant_quartic(q) == lam**6 * discriminant_quartic(p)


@given(st.lists(coeff, min_size=5, max_size=5).filter(lambda c: c[0] != 0), coeff)
def test_E_shift_invariance(c, t):
    p = PolyExactQ(c)
    assert invariant_E(p.shifted(t)) == invariant_E(p)


def test_taylor_shift_matches_direct_evaluation():
    c = [Fraction(3), Fraction(-2), Fraction(5, 7), Fraction(1), Fraction(-4)]
    t = Fraction(2, 3)
    shifted = taylor_shift(c, t)
    for x in (Fraction(-3), Fraction(0), Fraction(5, 11)):
        assert horner(shifted, x) == horner(c, x + t)


# ---------------------------------------------------------------------------
# real roots


def test_real_roots_examples():
    rs = real_roots(PolyReal([1, 0, 1, 0]))
    assert rs.real_roots == (0.0,) and rs.multiplicities == (1,) and rs.certified_simple
    rs = real_roots(PolyReal([1, 0, -1, 0]))
    assert rs.real_roots == pytest.approx((-1.0, 0.0, 1.0), abs=1e-14)
    assert rs.certified_simple
    assert len(real_roots(PolyReal([1, 0, 1, 0, 1]))) == 0


def test_real_roots_rejects_multiple_root():
    with pytest.raises(IllConditioned):
        real_roots(PolyReal([1, -3, 3, -1]))
    rs = real_roots(PolyReal([1, -3, 3, -1]), require_simple=False)
    assert not rs.certified_simple
    assert rs.real_roots == pytest.approx((1.0,), abs=1e-5)
    assert rs.multiplicities == (3,)


def test_real_roots_touching_double_root_reported():
    rs = real_roots(PolyReal([1, 0, -2, 0, 1]), require_simple=False)  # (x^2 - 1)^2
    assert rs.real_roots == pytest.approx((-1.0, 1.0), abs=1e-6)
    assert rs.multiplicities == (2, 2)


@settings(max_examples=200)
@given(
    st.lists(st.floats(min_value=-3, max_value=3), min_size=2, max_size=4, unique=True).filter(
        lambda rs: min(abs(a - b) for i, a in enumerate(rs) for b in rs[i + 1:]) > 0.05
    ),
    st.floats(min_value=0.2, max_value=3),
)
def test_real_roots_recovers_constructed_roots(roots, lead):
    coeffs = [lead]
    for r in roots:  # multiply by (x - r)
        coeffs = [a - r * b for a, b in zip(coeffs + [0.0], [0.0] + coeffs)]
    p = PolyReal(coeffs)
    rs = real_roots(p, 1e-13)
    assert rs.certified_simple
    assert rs.real_roots == pytest.approx(sorted(roots), abs=1e-9)
    scale = max(abs(c) for c in p.coeffs)
    for r in rs.real_roots:
        assert abs(p(r)) <= 1e-11 * scale


@settings(max_examples=200)
@given(st.lists(st.floats(min_value=-5, max_value=5), min_size=4, max_size=5).filter(lambda c: abs(c[0]) > 0.1))
def test_root_count_matches_sign_changes(c):
    p = PolyReal(c)
    try:
        rs = real_roots(p)
    except IllConditioned:
        return
    assert list(rs.real_roots) == sorted(rs.real_roots)
    assert len(rs) <= p.degree
    # sign changes on a grid that brackets each root between neighbours
    pts = [-cauchy_bound(p.coeffs)]
    for a, b in zip(rs.real_roots, rs.real_roots[1:]):
        pts.append(0.5 * (a + b))
    pts.append(cauchy_bound(p.coeffs))
    values = [p(x) for x in pts]
    changes = sum(1 for u, v in zip(values, values[1:]) if (u < 0) != (v < 0))
    assert changes == len(rs)
