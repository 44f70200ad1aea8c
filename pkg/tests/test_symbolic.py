import random
from fractions import Fraction
from math import gcd
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nongauss.symbolic import (
    IdentitySpec,
    MultiPolyQ,
    build_discriminant,
    build_E,
    check_annihilation,
    check_residual_identity,
    cubic_annihilation_specs,
    evaluate_at_random_points,
    from_canonical,
    partial,
    poly_add,
    poly_mul,
    poly_scale,
    quartic_residual_specs,
    shifted_coefficients,
    symbolic_sylvester_discriminant,
    symbols,
    to_canonical,
)

GOLDEN = Path(__file__).parent / "golden"
a, b, c, d, e = symbols()


def test_ring_basics():
    assert (poly_add(a + b, -a - b)).is_zero()
    assert poly_mul(a, e) == poly_mul(e, a)
    assert poly_scale(a * b, 0).is_zero()
    assert (a * 0).terms == {}
    assert len(MultiPolyQ({(1, 0, 0, 0, 0): 0})) == 0


poly_strategy = st.dictionaries(
    st.tuples(*[st.integers(0, 3)] * 5),
    st.fractions(min_value=-20, max_value=20, max_denominator=9),
    max_size=6,
).map(MultiPolyQ)


@given(poly_strategy, poly_strategy, poly_strategy)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert all(coef != 0 for coef in (p * q).terms.values())


@given(poly_strategy)
def test_canonical_round_trip(p):
    assert from_canonical(to_canonical(p)) == p


def test_partial_examples():
    assert partial(256 * a**3 * e**3, "a") == 768 * a**2 * e**3
    assert partial(build_discriminant(3), "d") == 18 * a * b * c - 4 * b**3 - 54 * a**2 * d
    assert partial(MultiPolyQ.constant(7), "a").is_zero()


def test_discriminant_term_counts():
    assert len(build_discriminant(3)) == 5
    assert len(build_discriminant(4)) == 16


def test_discriminant_substitution():
    value = build_discriminant(4).substitute({"a": 1, "b": 0, "c": 0, "d": 0, "e": 1})
    assert value == MultiPolyQ.constant(256)


@pytest.mark.parametrize("degree", [2, 3, 4])
def test_sylvester_route_matches_explicit(degree):
    syl = symbolic_sylvester_discriminant(degree)
    if degree == 2:
        assert syl == b**2 - 4 * a * c
    else:
        assert (syl - build_discriminant(degree)).is_zero()


def test_quartic_discriminant_content_is_one():
    content = 0
    for coef in build_discriminant(4).terms.values():
        assert coef.denominator == 1
        content = gcd(content, coef.numerator)
    assert content == 1


def test_quartic_discriminant_isobaric():
    # weight of a^i b^j c^k d^l e^m under x-scaling is j + 2k + 3l + 4m
    for exp in build_discriminant(4).terms:
        assert exp[1] + 2 * exp[2] + 3 * exp[3] + 4 * exp[4] == 12


@pytest.mark.parametrize("lam", [Fraction(2), Fraction(-3, 5), Fraction(7, 2)])
def test_quartic_discriminant_weighted_scaling(lam):
    D = build_discriminant(4)
    scaled = D.substitute({"b": lam * b, "c": lam**2 * c, "d": lam**3 * d, "e": lam**4 * e})
    assert scaled == D.scale(lam**12)


def test_E_shift_invariance_symbolic():
    # E(p(x + t)) - E(p) is a polynomial of degree <= 4 in t; vanishing at
    # nine distinct t proves it vanishes identically.
    E = build_E()
    for t in range(-4, 5):
        sa, sb, sc, sd, se = shifted_coefficients(4, t)
        shifted = sc * sc - 3 * sb * sd + 12 * sa * se
        assert shifted == E


def test_shifted_coefficients_example():
    point = {"a": 1, "b": 0, "c": 0, "d": 0, "e": 1}
    assert [x.evaluate(point) for x in shifted_coefficients(4, 1)] == [1, 4, 6, 4, 2]


def test_golden_quartic_discriminant():
    text = (GOLDEN / "discriminant_quartic.txt").read_text().strip()
    assert to_canonical(build_discriminant(4)) == text
    assert from_canonical(text) == symbolic_sylvester_discriminant(4)


def test_golden_cubic_discriminant():
    text = (GOLDEN / "discriminant_cubic.txt").read_text().strip()
    assert to_canonical(build_discriminant(3)) == text


def test_canonical_format():
    assert to_canonical(MultiPolyQ()) == "0"
    assert to_canonical(-4 * a * c + b**2) == "-4 * a c + 1 * b^2"
    assert to_canonical(a.scale(Fraction(-1, 36)) + 3) == "-1/36 * a + 3"


# ---------------------------------------------------------------------------
# identities


@pytest.mark.parametrize("sign", [-1, 1])
def test_cubic_annihilation(sign):
    for spec in cubic_annihilation_specs(sign):
        holds, witness = check_annihilation(spec)
        assert holds, spec.label
        assert witness.is_zero()


@pytest.mark.parametrize("s", [Fraction(-1, 2), Fraction(-1, 5), Fraction(-1, 3)])
def test_cubic_annihilation_wrong_exponent_fails(s):
    spec = cubic_annihilation_specs(-1, s)[0]
    holds, witness = check_annihilation(spec)
    assert not holds
    values = evaluate_at_random_points(witness, 20, random.Random(5))
    assert any(v != 0 for v in values)


@pytest.mark.parametrize("sign", [-1, 1])
def test_quartic_residual_identities(sign):
    specs = quartic_residual_specs(sign)
    assert len(specs) == 6
    for spec in specs:
        holds, witness = check_residual_identity(spec)
        assert holds, spec.label
        assert witness.is_zero()


def test_quartic_table_constants_for_negative_D():
    first, *_, sixth = quartic_residual_specs(-1)
    assert first.op_pair == (("a", "c"), ("b", "b"))
    assert first.rhs_constant == Fraction(-1, 36)
    assert first.rhs_factor == 3 * d**2 - 8 * c * e
    assert sixth.rhs_constant == Fraction(-1, 36)
    assert sixth.rhs_factor == 3 * b**2 - 8 * a * c


def test_quartic_sign_flip_needed():
    # the u = -D constants applied to u = +D must fail
    for spec_minus, spec_plus in zip(quartic_residual_specs(-1), quartic_residual_specs(1)):
        wrong = IdentitySpec(
            spec_plus.op_pair, spec_plus.s, spec_plus.u, spec_minus.rhs_constant, spec_plus.rhs_factor
        )
        assert not check_residual_identity(wrong).holds


@pytest.mark.parametrize("index", range(6))
def test_quartic_perturbed_kappa_fails(index):
    spec = quartic_residual_specs(-1)[index]
    bad = IdentitySpec(spec.op_pair, spec.s, spec.u, spec.rhs_constant * Fraction(11, 10), spec.rhs_factor)
    holds, witness = check_residual_identity(bad)
    assert not holds
    assert any(v != 0 for v in evaluate_at_random_points(witness, 20, random.Random(index)))


def test_quartic_wrong_exponent_fails():
    spec = quartic_residual_specs(-1)[0]
    bad = IdentitySpec(spec.op_pair, Fraction(-1, 6), spec.u, spec.rhs_constant, spec.rhs_factor)
    assert not check_residual_identity(bad).holds


def test_quartic_operators_do_not_annihilate():
    for spec in quartic_residual_specs(-1):
        bare = IdentitySpec(spec.op_pair, spec.s, spec.u)
        assert not check_annihilation(bare).holds


def test_witness_zero_iff_random_evaluations_zero():
    rng = random.Random(11)
    good = check_annihilation(cubic_annihilation_specs(-1)[1]).witness
    bad = check_annihilation(cubic_annihilation_specs(-1, Fraction(-1, 2))[1]).witness
    assert all(v == 0 for v in evaluate_at_random_points(good, 20, rng))
    assert any(v != 0 for v in evaluate_at_random_points(bad, 20, rng))


def test_spec_symbol_validation():
    with pytest.raises(ValueError):
        IdentitySpec((("a", "e"), ("b", "c")), Fraction(-1, 6), build_discriminant(3), degree=3)


def test_annihilation_rejects_nonzero_rhs():
    spec = quartic_residual_specs(-1)[0]
    with pytest.raises(ValueError):
        check_annihilation(spec)
