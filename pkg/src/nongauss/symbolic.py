"""Exact polynomials over Q in the five coefficient symbols a, b, c, d, e.

Checking the operator identities
--------------------------------
The claims to verify have the shape

    (d_i d_j - d_k d_l) u^s = kappa * E * R * u^(s-1)

with ``u = ±D`` a polynomial and ``s`` a negative rational (``-1/6`` for
cubics, ``-1/12`` for quartics).  Fractional powers are not polynomials, but
the chain rule gives

    d_i d_j u^s = s (s-1) u^(s-2) u_i u_j + s u^(s-1) u_ij

so the left side equals ``s u^(s-2) P`` with

    P = (s-1) (u_i u_j - u_k u_l) + u (u_ij - u_kl).

Dividing the claim by ``u^(s-2)`` (legitimate wherever ``u != 0``) leaves the
polynomial statement ``s P - kappa E R u = 0``, decidable by exact
arithmetic.  Annihilation identities are the special case ``R = 0``, where
``s != 0`` reduces the claim to ``P = 0``.  The nonzero left-over polynomial,
when there is one, is returned as a witness.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, NamedTuple, Sequence, Union

SYMBOLS = ("a", "b", "c", "d", "e")
NVARS = len(SYMBOLS)
_INDEX = {s: i for i, s in enumerate(SYMBOLS)}

Exponent = tuple[int, int, int, int, int]
Scalar = Union[int, Fraction]


def _sym_index(sym: str) -> int:
    try:
        return _INDEX[sym]
    except KeyError:
        raise ValueError(f"unknown symbol {sym!r}; expected one of {SYMBOLS}") from None


def _grlex_key(exp: Exponent):
    return (-sum(exp), tuple(-k for k in exp))


class MultiPolyQ:
    """Sparse polynomial: exponent 5-tuple -> nonzero Fraction coefficient."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, Scalar] | None = None):
        clean: dict[Exponent, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(k) for k in exp)
            if len(exp) != NVARS or any(k < 0 for k in exp):
                raise ValueError(f"bad exponent vector {exp}")
            coeff = Fraction(coeff)
            if coeff:
                clean[exp] = clean.get(exp, 0) + coeff
                if not clean[exp]:
                    del clean[exp]
        self._terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def _raw(cls, terms: dict[Exponent, Fraction]) -> MultiPolyQ:
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, value: Scalar) -> MultiPolyQ:
        return cls({(0,) * NVARS: value})

    @classmethod
    def symbol(cls, name: str) -> MultiPolyQ:
        exp = [0] * NVARS
        exp[_sym_index(name)] = 1
        return cls({tuple(exp): 1})

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]))

    # ring operations
    def _coerce(self, other) -> MultiPolyQ:
        if isinstance(other, MultiPolyQ):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPolyQ.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for exp, c in other._terms.items():
            v = out.get(exp, 0) + c
            if v:
                out[exp] = v
            else:
                out.pop(exp, None)
        return MultiPolyQ._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPolyQ._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MultiPolyQ):
            return NotImplemented
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exp = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3], e1[4] + e2[4])
                out[exp] = out.get(exp, 0) + c1 * c2
        return MultiPolyQ._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, k: Scalar) -> MultiPolyQ:
        k = Fraction(k)
        if not k:
            return MultiPolyQ()
        return MultiPolyQ._raw({e: c * k for e, c in self._terms.items()})

    def __pow__(self, n: int) -> MultiPolyQ:
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = MultiPolyQ.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self.sorted_terms()))
        return self._hash

    # calculus and evaluation
    def partial(self, sym: str) -> MultiPolyQ:
        i = _sym_index(sym)
        out = {}
        for exp, c in self._terms.items():
            k = exp[i]
            if k:
                new = list(exp)
                new[i] = k - 1
                out[tuple(new)] = c * k
        return MultiPolyQ._raw(out)

    def exact_div_symbol(self, sym: str) -> MultiPolyQ:
        """Divide by a single symbol; every term must contain it."""
        i = _sym_index(sym)
        out = {}
        for exp, c in self._terms.items():
            if exp[i] == 0:
                raise ArithmeticError(f"term {exp} is not divisible by {sym}")
            new = list(exp)
            new[i] -= 1
            out[tuple(new)] = c
        return MultiPolyQ._raw(out)

    def evaluate(self, point: Mapping[str, Scalar] | Sequence[Scalar]) -> Fraction:
        vals = _point_values(point)
        total = Fraction(0)
        for exp, c in self._terms.items():
            term = c
            for v, k in zip(vals, exp):
                if k:
                    term *= v**k
            total += term
        return total

    def substitute(self, mapping: Mapping[str, Union[MultiPolyQ, Scalar]]) -> MultiPolyQ:
        """Replace symbols by polynomials or scalars; unmapped symbols stay."""
        images = [
            _as_poly(mapping[s]) if s in mapping else MultiPolyQ.symbol(s) for s in SYMBOLS
        ]
        power_cache: dict[tuple[int, int], MultiPolyQ] = {}

        def power(i: int, k: int) -> MultiPolyQ:
            key = (i, k)
            if key not in power_cache:
                power_cache[key] = images[i] ** k
            return power_cache[key]

        total = MultiPolyQ()
        for exp, c in self._terms.items():
            term = MultiPolyQ.constant(c)
            for i, k in enumerate(exp):
                if k:
                    term = term * power(i, k)
            total = total + term
        return total

    # text form
    def __str__(self) -> str:
        return to_canonical(self)

    def __repr__(self) -> str:
        return f"MultiPolyQ({to_canonical(self)!r})"


def _as_poly(x) -> MultiPolyQ:
    if isinstance(x, MultiPolyQ):
        return x
    return MultiPolyQ.constant(Fraction(x))


def _point_values(point) -> list[Fraction]:
    if isinstance(point, Mapping):
        return [Fraction(point.get(s, 0)) for s in SYMBOLS]
    vals = [Fraction(v) for v in point]
    return vals + [Fraction(0)] * (NVARS - len(vals))


def symbols() -> tuple[MultiPolyQ, ...]:
    return tuple(MultiPolyQ.symbol(s) for s in SYMBOLS)


def poly_add(p: MultiPolyQ, q: MultiPolyQ) -> MultiPolyQ:
    return p + q


def poly_mul(p: MultiPolyQ, q: MultiPolyQ) -> MultiPolyQ:
    return p * q


def poly_scale(p: MultiPolyQ, k: Scalar) -> MultiPolyQ:
    return p.scale(k)


def partial(p: MultiPolyQ, sym: str) -> MultiPolyQ:
    return p.partial(sym)


# ---------------------------------------------------------------------------
# canonical text form: "coeff * a^i b^j ... ± ..." in graded-lex order


def _monomial_str(exp: Exponent) -> str:
    parts = []
    for s, k in zip(SYMBOLS, exp):
        if k == 1:
            parts.append(s)
        elif k > 1:
            parts.append(f"{s}^{k}")
    return " ".join(parts)


def to_canonical(p: MultiPolyQ) -> str:
    if p.is_zero():
        return "0"
    chunks = []
    for idx, (exp, c) in enumerate(p.sorted_terms()):
        mono = _monomial_str(exp)
        mag = abs(c)
        body = f"{mag} * {mono}" if mono else f"{mag}"
        if idx == 0:
            chunks.append(f"-{body}" if c < 0 else body)
        else:
            chunks.append(f"{'-' if c < 0 else '+'} {body}")
    return " ".join(chunks)


_TERM_RE = re.compile(
    r"\s*([+-])?\s*(\d+(?:/\d+)?)\s*(?:\*\s*((?:[a-e](?:\^\d+)?\s*)+))?"
)


def from_canonical(text: str) -> MultiPolyQ:
    """Inverse of `to_canonical` (accepts any term order)."""
    text = text.strip()
    if text == "0":
        return MultiPolyQ()
    terms: dict[Exponent, Fraction] = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos or (m.group(1) is None and not first):
            raise ValueError(f"cannot parse polynomial near position {pos}: {text[pos:pos + 20]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = sign * Fraction(m.group(2))
        exp = [0] * NVARS
        if m.group(3):
            for factor in m.group(3).split():
                name, _, power = factor.partition("^")
                exp[_sym_index(name)] += int(power) if power else 1
        key = tuple(exp)
        terms[key] = terms.get(key, 0) + coeff
        pos = m.end()
        first = False
    return MultiPolyQ(terms)


# ---------------------------------------------------------------------------
# discriminants and E


@lru_cache(maxsize=None)
def build_discriminant(degree: int) -> MultiPolyQ:
    """Explicit discriminant of a x^3 + b x^2 + c x + d, or of the quartic in a..e."""
    a, b, c, d, e = symbols()
    if degree == 3:
        return b**2 * c**2 + 18 * a * b * c * d - 4 * a * c**3 - 4 * b**3 * d - 27 * a**2 * d**2
    if degree == 4:
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
    raise ValueError(f"degree must be 3 or 4, got {degree}")


def build_E() -> MultiPolyQ:
    a, b, c, d, e = symbols()
    return c**2 - 3 * b * d + 12 * a * e


def _laplace_det(matrix: Sequence[Sequence[MultiPolyQ]]) -> MultiPolyQ:
    """Determinant by cofactor expansion with memoised minors (division-free)."""
    n = len(matrix)

    @lru_cache(maxsize=None)
    def minor(row: int, cols: int) -> MultiPolyQ:
        if row == n:
            return MultiPolyQ.constant(1)
        total = MultiPolyQ()
        sign = 1
        for j in range(n):
            if cols & (1 << j):
                continue
            entry = matrix[row][j]
            if entry:
                sub = minor(row + 1, cols | (1 << j))
                if sub:
                    term = entry * sub
                    total = total + term if sign > 0 else total - term
            # cofactor signs alternate over the columns still free
            sign = -sign
        return total

    return minor(0, 0)


def symbolic_sylvester_discriminant(degree: int) -> MultiPolyQ:
    """Discriminant from the Sylvester determinant of p and p', expanded exactly."""
    if degree not in (2, 3, 4):
        raise ValueError("degree must be 2, 3 or 4")
    p = list(symbols()[: degree + 1])
    dp = [p[i] * (degree - i) for i in range(degree)]
    m, n = degree, degree - 1
    size = m + n
    zero = MultiPolyQ()
    rows = []
    for i in range(n):
        rows.append([zero] * i + p + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + dp + [zero] * (size - n - 1 - i))
    res = _laplace_det(rows)
    sign = -1 if (degree * (degree - 1) // 2) % 2 else 1
    return res.exact_div_symbol("a").scale(sign)


def shifted_coefficients(degree: int, t: Scalar) -> tuple[MultiPolyQ, ...]:
    """Coefficients of p(x + t) as polynomials in the symbols of p."""
    work = list(symbols()[: degree + 1])
    t = Fraction(t)
    for i in range(degree):
        for j in range(1, degree + 1 - i):
            work[j] = work[j] + work[j - 1].scale(t)
    return tuple(work)


# ---------------------------------------------------------------------------
# identity specifications and checks


@dataclass(frozen=True)
class IdentitySpec:
    """Claim: (d_i d_j - d_k d_l) u^s = kappa * E * R * u^(s-1)  (E = 1 for cubics)."""

    op_pair: tuple[tuple[str, str], tuple[str, str]]
    s: Fraction
    u: MultiPolyQ
    rhs_constant: Fraction = Fraction(0)
    rhs_factor: MultiPolyQ = MultiPolyQ()
    degree: int = 4
    label: str = ""

    def __post_init__(self):
        allowed = SYMBOLS[: self.degree + 1]
        for sym in (*self.op_pair[0], *self.op_pair[1]):
            if sym not in allowed:
                raise ValueError(f"symbol {sym!r} not valid for degree {self.degree}")
        object.__setattr__(self, "s", Fraction(self.s))
        object.__setattr__(self, "rhs_constant", Fraction(self.rhs_constant))

    def operator_str(self) -> str:
        (i, j), (k, l) = self.op_pair
        return f"d{i}d{j} - d{k}d{l}"


class CheckResult(NamedTuple):
    holds: bool
    witness: MultiPolyQ


def _operator_core(spec: IdentitySpec) -> MultiPolyQ:
    """P = (s-1)(u_i u_j - u_k u_l) + u (u_ij - u_kl)."""
    (i, j), (k, l) = spec.op_pair
    u = spec.u
    ui, uj, uk, ul = (u.partial(x) for x in (i, j, k, l))
    uij = ui.partial(j)
    ukl = uk.partial(l)
    return (ui * uj - uk * ul).scale(spec.s - 1) + u * (uij - ukl)


def check_annihilation(spec: IdentitySpec) -> CheckResult:
    """Decide (d_i d_j - d_k d_l) u^s == 0 exactly; the witness is P."""
    if spec.rhs_factor:
        raise ValueError("annihilation specs must have a zero right-hand factor")
    witness = _operator_core(spec)
    return CheckResult(witness.is_zero(), witness)


def check_residual_identity(spec: IdentitySpec) -> CheckResult:
    """Decide s P - kappa E R u == 0 exactly; the witness is that defect."""
    e_factor = build_E() if spec.degree == 4 else MultiPolyQ.constant(1)
    defect = _operator_core(spec).scale(spec.s) - (e_factor * spec.rhs_factor * spec.u).scale(
        spec.rhs_constant
    )
    return CheckResult(defect.is_zero(), defect)


CUBIC_PAIRS = ((("a", "d"), ("b", "c")), (("b", "b"), ("a", "c")), (("c", "c"), ("b", "d")))


def cubic_annihilation_specs(sign: int = -1, s: Scalar = Fraction(-1, 6)) -> list[IdentitySpec]:
    """The three cubic operators applied to (sign * D)^s."""
    u = build_discriminant(3).scale(sign)
    return [
        IdentitySpec(pair, Fraction(s), u, degree=3, label=f"cubic {pair[0][0]}{pair[0][1]}-{pair[1][0]}{pair[1][1]}")
        for pair in CUBIC_PAIRS
    ]


def _quartic_table():
    a, b, c, d, e = symbols()
    # operator, kappa for u = -D, right-hand factor R
    return (
        ((("a", "c"), ("b", "b")), Fraction(-1, 36), 3 * d**2 - 8 * c * e),
        ((("a", "d"), ("b", "c")), Fraction(1, 18), c * d - 6 * b * e),
        ((("a", "e"), ("c", "c")), Fraction(-1, 9), c**2 - 2 * b * d - 4 * a * e),
        ((("b", "d"), ("c", "c")), Fraction(1, 36), 16 * a * e - b * d),
        ((("b", "e"), ("c", "d")), Fraction(-1, 18), 6 * a * d - b * c),
        ((("c", "e"), ("d", "d")), Fraction(-1, 36), 3 * b**2 - 8 * a * c),
    )


QUARTIC_PAIRS = tuple(row[0] for row in _quartic_table())


def quartic_residual_specs(sign: int = -1, s: Scalar = Fraction(-1, 12)) -> list[IdentitySpec]:
    """The six quartic residual claims for u = sign * D.

    The tabulated constants belong to u = -D; for u = +D every constant flips sign.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    u = build_discriminant(4).scale(sign)
    specs = []
    for pair, kappa, factor in _quartic_table():
        specs.append(
            IdentitySpec(
                pair,
                Fraction(s),
                u,
                rhs_constant=-sign * kappa,
                rhs_factor=factor,
                degree=4,
                label=f"quartic {pair[0][0]}{pair[0][1]}-{pair[1][0]}{pair[1][1]} ({'D>0' if sign > 0 else 'D<0'})",
            )
        )
    return specs


def evaluate_at_random_points(p: MultiPolyQ, n_points: int, rng) -> list[Fraction]:
    """Evaluate at random rational points (numerators/denominators drawn from ``rng``)."""
    out = []
    for _ in range(n_points):
        point = [Fraction(rng.randint(-99, 99), rng.randint(1, 99)) for _ in SYMBOLS]
        out.append(p.evaluate(point))
    return out

