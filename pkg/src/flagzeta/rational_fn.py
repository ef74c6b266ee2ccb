"""Exact univariate rational functions over QQ and (log q)-scaled limits.

The canonical variable is x = q^{-(s-1)}, so s = 1 sits at x = 1 for every q
and 1 - x = (s-1)·log q + O((s-1)^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from collections.abc import Sequence
from typing import Any, Union

from sympy import Matrix, Rational
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, ring

from .errors import InsufficientDataError, PoleOrderError

# ============================================================================
# Polynomial ring QQ[x] and conversions
# ============================================================================

RING, X = ring("x", QQ)

Scalar = Union[int, Fraction]


def _qq(value: Scalar) -> Any:
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _frac(value: Any) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def poly_from_coeffs(coeffs: list[Fraction] | list[int] | list[Scalar]) -> PolyElement:
    """Build a polynomial from coefficients listed from degree 0 upward."""
    return RING.from_dict(
        {(k,): _qq(c) for k, c in enumerate(coeffs) if c != 0}
    )


def poly_coeffs(p: PolyElement) -> list[Fraction]:
    """Coefficients of p from degree 0 upward (empty for the zero polynomial)."""
    if not p:
        return []
    out = [Fraction(0)] * (p.degree() + 1)
    for (k,), c in p.terms():
        out[k] = _frac(c)
    return out


def horner(coeffs: Sequence[Scalar], at: Scalar) -> Fraction:
    """Value at `at` of the polynomial with coefficients listed from degree 0."""
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * at + c
    return acc


def _monomial_image(p: PolyElement, c: Fraction, a: int) -> tuple[PolyElement, int]:
    """Return (r, shift) with p(c·x^a) = r(x) / x^shift."""
    coeffs = poly_coeffs(p)
    if a >= 0:
        return RING.from_dict(
            {(a * k,): _qq(v * c**k) for k, v in enumerate(coeffs) if v != 0}
        ), 0
    top = len(coeffs) - 1
    return RING.from_dict(
        {(-a * (top - k),): _qq(v * c**k) for k, v in enumerate(coeffs) if v != 0}
    ), -a * top


# ============================================================================
# RatFn
# ============================================================================


class RatFn:
    """A reduced fraction num/den over QQ with a monic denominator."""

    __slots__ = ("num", "den")

    num: PolyElement
    den: PolyElement

    def __init__(self, num: PolyElement, den: PolyElement | None = None) -> None:
        if den is None:
            den = RING.one
        if not den:
            raise ZeroDivisionError("RatFn with zero denominator")
        if not num:
            self.num, self.den = RING.zero, RING.one
            return
        g = num.gcd(den)
        num, den = num.exquo(g), den.exquo(g)
        lc = den.LC
        self.num = num.quo_ground(lc)
        self.den = den.monic()

    # --- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, value: Scalar) -> RatFn:
        return cls(RING.ground_new(_qq(value)))

    @classmethod
    def from_coeffs(
        cls, num: list[Fraction] | list[int], den: list[Fraction] | list[int] | None = None
    ) -> RatFn:
        return cls(poly_from_coeffs(num), poly_from_coeffs(den) if den is not None else None)

    @classmethod
    def monomial(cls, coeff: Scalar, power: int) -> RatFn:
        """coeff·x^power, for any integer power."""
        if power >= 0:
            return cls(RING.from_dict({(power,): _qq(coeff)}))
        return cls(RING.ground_new(_qq(coeff)), RING.from_dict({(-power,): QQ.one}))

    @classmethod
    def one_minus(cls, coeff: Scalar, power: int) -> RatFn:
        """1 - coeff·x^power."""
        return cls.constant(1) - cls.monomial(coeff, power)

    # --- structure ----------------------------------------------------------

    @property
    def num_coeffs(self) -> list[Fraction]:
        return poly_coeffs(self.num)

    @property
    def den_coeffs(self) -> list[Fraction]:
        return poly_coeffs(self.den)

    def is_zero(self) -> bool:
        return not self.num

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RatFn.constant(other)
        if not isinstance(other, RatFn):
            return NotImplemented
        return self.num_coeffs == other.num_coeffs and self.den_coeffs == other.den_coeffs

    def __hash__(self) -> int:
        return hash((tuple(self.num_coeffs), tuple(self.den_coeffs)))

    def __repr__(self) -> str:
        return f"RatFn(({self.num.as_expr()}) / ({self.den.as_expr()}))"

    # --- arithmetic ---------------------------------------------------------

    def __add__(self, other: RatFn | Scalar) -> RatFn:
        o = _coerce(other)
        return RatFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> RatFn:
        return RatFn(-self.num, self.den)

    def __sub__(self, other: RatFn | Scalar) -> RatFn:
        return self + (-_coerce(other))

    def __rsub__(self, other: Scalar) -> RatFn:
        return _coerce(other) - self

    def __mul__(self, other: RatFn | Scalar) -> RatFn:
        o = _coerce(other)
        return RatFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other: RatFn | Scalar) -> RatFn:
        o = _coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division of RatFn by zero")
        return RatFn(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other: Scalar) -> RatFn:
        return _coerce(other) / self

    def __pow__(self, exponent: int) -> RatFn:
        if exponent < 0:
            return RatFn.constant(1) / (self ** -exponent)
        return RatFn(self.num**exponent, self.den**exponent)

    # --- evaluation ---------------------------------------------------------

    def __call__(self, at: Scalar) -> Fraction:
        at = Fraction(at)
        d = horner(self.den_coeffs, at)
        if d == 0:
            raise ZeroDivisionError(f"RatFn has a pole at x = {at}")
        return horner(self.num_coeffs, at) / d

    def substitute_monomial(self, coeff: Scalar, power: int) -> RatFn:
        """Return f(coeff·x^power)."""
        c = Fraction(coeff)
        if power == 0:
            return RatFn.constant(self(c))
        n, n_shift = _monomial_image(self.num, c, power)
        d, d_shift = _monomial_image(self.den, c, power)
        out = RatFn(n, d)
        shift = d_shift - n_shift
        return out * RatFn.monomial(1, shift) if shift else out


def _coerce(value: RatFn | Scalar) -> RatFn:
    if isinstance(value, RatFn):
        return value
    return RatFn.constant(value)


def ratfn_arith(a: RatFn, b: RatFn, op: str) -> RatFn:
    """Apply one of + - * / to two rational functions."""
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op in ("*", "×"):
        return a * b
    if op in ("/", "÷"):
        return a / b
    raise ValueError(f'Unknown RatFn operation "{op}"')


# ============================================================================
# ScaledLimit
# ============================================================================


@dataclass(frozen=True, slots=True)
class ScaledLimit:
    """The number coeff·(log q)^logq_pow."""

    coeff: Fraction
    logq_pow: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        if self.coeff == 0:
            object.__setattr__(self, "logq_pow", 0)

    @classmethod
    def zero(cls) -> ScaledLimit:
        return cls(Fraction(0), 0)

    @classmethod
    def rational(cls, value: Scalar) -> ScaledLimit:
        return cls(Fraction(value), 0)

    def __mul__(self, other: ScaledLimit | Scalar) -> ScaledLimit:
        if isinstance(other, ScaledLimit):
            return ScaledLimit(self.coeff * other.coeff, self.logq_pow + other.logq_pow)
        return ScaledLimit(self.coeff * Fraction(other), self.logq_pow)

    __rmul__ = __mul__

    def __truediv__(self, other: ScaledLimit | Scalar) -> ScaledLimit:
        if isinstance(other, ScaledLimit):
            if other.coeff == 0:
                raise ZeroDivisionError("division by a zero ScaledLimit")
            return ScaledLimit(self.coeff / other.coeff, self.logq_pow - other.logq_pow)
        return ScaledLimit(self.coeff / Fraction(other), self.logq_pow)

    def __pow__(self, exponent: int) -> ScaledLimit:
        return ScaledLimit(self.coeff**exponent, self.logq_pow * exponent)

    def value(self, q: int) -> float:
        """Numerical value coeff·(log q)^logq_pow."""
        return float(self.coeff) * math.log(q) ** self.logq_pow

    def __str__(self) -> str:
        if self.logq_pow == 0:
            return str(self.coeff)
        return f"{self.coeff}·(log q)^{self.logq_pow}"


# ============================================================================
# Orders, limits and series
# ============================================================================


def _strip_root(p: PolyElement, c: Fraction) -> tuple[int, PolyElement]:
    linear = X - _qq(c)
    mult = 0
    while True:
        quotient, rem = p.div(linear)
        if rem:
            return mult, p
        p = quotient
        mult += 1


def order_at(f: RatFn, c: Scalar) -> tuple[int, Fraction]:
    """(order, leading) with f(x) = leading·(x-c)^order·(1 + O(x-c))."""
    if f.is_zero():
        raise ValueError("order_at: the zero function has no order")
    c = Fraction(c)
    m_num, rest_num = _strip_root(f.num, c)
    m_den, rest_den = _strip_root(f.den, c)
    leading = horner(poly_coeffs(rest_num), c) / horner(poly_coeffs(rest_den), c)
    return m_num - m_den, leading


def pole_order(f: RatFn, c: Scalar = 1) -> int:
    """Order of the pole of f at c (0 when f is regular there)."""
    if f.is_zero():
        return 0
    return max(0, -order_at(f, c)[0])


def s_limit(f: RatFn, k: int, q: int) -> ScaledLimit:
    """lim_{s->1} (s-1)^k f(q^{-(s-1)}).

    Near x = 1, (x-1)^{-k} = (-1)^k (1-x)^{-k} and (1-x) ~ (s-1)·log q, so a
    pole of order exactly k contributes leading·(-1)^k·(log q)^{-k}.
    """
    if f.is_zero():
        return ScaledLimit.zero()
    order, leading = order_at(f, 1)
    pole = -order
    if pole > k:
        raise PoleOrderError(
            f"pole of order {pole} at s = 1 (q = {q}) exceeds the {k} factor(s) of (s-1)"
        )
    if pole < k:
        return ScaledLimit.zero()
    return ScaledLimit(leading * (-1) ** k, -k)


def series_coeffs(f: RatFn, n: int) -> list[Fraction]:
    """First n+1 Taylor coefficients of f at x = 0."""
    den = f.den_coeffs
    if den[0] == 0:
        raise ValueError("series_coeffs: the function has a pole at x = 0")
    num = f.num_coeffs
    out: list[Fraction] = []
    for k in range(n + 1):
        acc = num[k] if k < len(num) else Fraction(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * out[k - j]
        out.append(acc / den[0])
    return out


# ============================================================================
# Rational reconstruction from a coefficient list
# ============================================================================


def _to_rational(value: Fraction) -> Rational:
    return Rational(value.numerator, value.denominator)


def _fit_degree(coeffs: list[Fraction], degree: int, num_degree: int) -> RatFn | None:
    """The [num_degree/degree] Padé form matching the first
    num_degree + degree + 1 coefficients, or None when that system is singular."""
    if num_degree < 0:
        return RatFn.constant(0)
    if degree == 0:
        return RatFn.from_coeffs(coeffs[: num_degree + 1])
    system = Matrix(
        degree, degree, lambda i, j: _to_rational(coeffs[num_degree + i - j])
    )
    if system.det() == 0:
        return None
    rhs = Matrix(degree, 1, lambda i, _: -_to_rational(coeffs[num_degree + 1 + i]))
    solution = system.LUsolve(rhs)
    den = [Fraction(1)] + [Fraction(int(v.p), int(v.q)) for v in solution]
    num = [
        sum((den[j] * coeffs[k - j] for j in range(min(k, degree) + 1)), Fraction(0))
        for k in range(num_degree + 1)
    ]
    return RatFn.from_coeffs(num, den)


def fit_rational(coeffs: list[Fraction] | list[int], max_den_degree: int) -> RatFn | None:
    """Guess a rational function N/Q with deg Q <= max_den_degree whose
    expansion reproduces every coefficient supplied.

    Denominator degrees D are tried from 0 upward. For each D the proper form
    (deg N < D, fixed by 2·D coefficients) is tried first, then the form with
    deg N <= D (fixed by 2·D + 1 coefficients) when 2·D + 3 coefficients are
    available. Either way at least two coefficients are only used for
    verification. Returns None when no candidate fits.
    """
    data = [Fraction(c) for c in coeffs]
    if max_den_degree < 0:
        raise InsufficientDataError(f"max_den_degree must be >= 0, got {max_den_degree}")
    if len(data) < 2 * max_den_degree + 2:
        raise InsufficientDataError(
            f"fit_rational needs at least {2 * max_den_degree + 2} coefficients "
            f"for denominator degree {max_den_degree}, got {len(data)}"
        )
    for degree in range(max_den_degree + 1):
        num_degrees = [degree - 1]
        if len(data) >= 2 * degree + 3:
            num_degrees.append(degree)
        for num_degree in num_degrees:
            candidate = _fit_degree(data, degree, num_degree)
            if candidate is None:
                continue
            if series_coeffs(candidate, len(data) - 1) == data:
                return candidate
    return None


# ============================================================================
# JSON forms: rationals as "p/q" strings
# ============================================================================


def fraction_to_json(value: Fraction) -> str:
    return str(Fraction(value))


def ratfn_to_json(f: RatFn) -> dict[str, list[str]]:
    return {
        "num": [fraction_to_json(c) for c in f.num_coeffs] or ["0"],
        "den": [fraction_to_json(c) for c in f.den_coeffs],
    }


def ratfn_from_json(data: dict[str, list[str]]) -> RatFn:
    return RatFn.from_coeffs(
        [Fraction(c) for c in data["num"]], [Fraction(c) for c in data["den"]]
    )


def scaled_to_json(value: ScaledLimit) -> dict[str, str | int]:
    return {"coeff": fraction_to_json(value.coeff), "logq_pow": value.logq_pow}


def scaled_from_json(data: dict[str, Any]) -> ScaledLimit:
    return ScaledLimit(Fraction(data["coeff"]), int(data["logq_pow"]))
