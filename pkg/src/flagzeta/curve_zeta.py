"""Zeta function of the base curve C over F_q and place counts of its function field."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from sympy import divisors, factorint, mobius

from .errors import ConfigurationError, WorkCapError
from .limits import MAX_PLACE_DEGREE
from .rational_fn import RatFn, ScaledLimit

# ============================================================================
# Types
# ============================================================================


@dataclass(frozen=True, slots=True)
class CurveZeta:
    q: int
    genus: int
    # P(t) from degree 0 upward; Z(C, t) = P(t) / ((1 - t)(1 - qt))
    numerator: tuple[int, ...]

    @property
    def class_number(self) -> int:
        return sum(self.numerator)


def is_prime_power(q: int) -> bool:
    return q >= 2 and len(factorint(q)) == 1


def make_curve(q: int, genus: int = 0, numerator: list[int] | tuple[int, ...] = (1,)) -> CurveZeta:
    """Validate curve data: q a prime power, P(0) = 1, deg P = 2g and the
    functional equation c_{2g-i} = q^{g-i}·c_i (so P(1/q)·q^g = P(1))."""
    if not is_prime_power(q):
        raise ConfigurationError(f"q = {q} is not a prime power")
    if genus < 0:
        raise ConfigurationError(f"genus must be >= 0, got {genus}")
    coeffs = tuple(int(c) for c in numerator)
    if not coeffs or coeffs[0] != 1:
        raise ConfigurationError(f"zeta numerator must satisfy P(0) = 1, got {list(coeffs)}")
    if len(coeffs) - 1 != 2 * genus or coeffs[-1] == 0:
        raise ConfigurationError(
            f"zeta numerator {list(coeffs)} must have degree 2g = {2 * genus}"
        )
    for i in range(genus + 1):
        if coeffs[2 * genus - i] != q ** (genus - i) * coeffs[i]:
            raise ConfigurationError(
                f"zeta numerator {list(coeffs)} violates the functional equation "
                f"P(1/q)·q^g = P(1) at coefficient {2 * genus - i}"
            )
    return CurveZeta(q=q, genus=genus, numerator=coeffs)


def default_curve(q: int) -> CurveZeta:
    """P^1 over F_q."""
    return make_curve(q, 0, (1,))


def parse_numerator(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError as err:
        raise ConfigurationError(f'Invalid zeta numerator "{text}"') from err


# ============================================================================
# Zeta values
# ============================================================================


def zeta_rat(c: CurveZeta) -> RatFn:
    """Z(C, t) as a rational function of t."""
    return RatFn.from_coeffs(list(c.numerator)) / (
        RatFn.one_minus(1, 1) * RatFn.one_minus(c.q, 1)
    )


def zeta_line(c: CurveZeta, base: int, slope: int) -> RatFn:
    """ζ_C(base + u·slope) = Z(C, q^{-base}·y^{slope}) as a function of y = q^{-u}."""
    return zeta_rat(c).substitute_monomial(Fraction(1, c.q) ** base, slope)


def zeta_at(c: CurveZeta, m: int) -> Fraction:
    """ζ_C(m) = Z(C, q^{-m}) for an integer m >= 2."""
    if m < 2:
        raise ConfigurationError(f"zeta_at needs m >= 2 (right of the pole), got {m}")
    return zeta_rat(c)(Fraction(1, c.q**m))


def curve_residue(c: CurveZeta) -> ScaledLimit:
    """lim_{s->1} (s-1)·ζ_C(s) = h·q^{-g} / (1 - q^{-1}) · (log q)^{-1}."""
    p_at = sum(Fraction(coef, c.q**k) for k, coef in enumerate(c.numerator))
    return ScaledLimit(p_at / (1 - Fraction(1, c.q)), -1)


# ============================================================================
# Places of the function field
# ============================================================================


def _check_degree(D: int) -> None:
    if D < 1:
        raise ConfigurationError(f"place degree bound must be >= 1, got {D}")
    if D > MAX_PLACE_DEGREE:
        raise WorkCapError(f"place degree bound {D} exceeds {MAX_PLACE_DEGREE}")


def places_by_degree(q: int, D: int) -> list[int]:
    """Number of places of F_q(t) of each degree 1..D (infinity counted in degree 1)."""
    _check_degree(D)
    out = [q + 1]
    for d in range(2, D + 1):
        total = sum(int(mobius(e)) * q ** (d // e) for e in divisors(d))
        out.append(total // d)
    return out


def point_counts(c: CurveZeta, D: int) -> list[int]:
    """#C(F_{q^n}) for n = 1..D, from the zeta numerator by Newton's identities."""
    _check_degree(D)
    e = [(-1) ** k * coef for k, coef in enumerate(c.numerator)]
    power_sums: list[int] = []
    for n in range(1, D + 1):
        s = sum(
            (-1) ** (k - 1) * (e[k] if k < len(e) else 0) * power_sums[n - k - 1]
            for k in range(1, n)
        )
        if n < len(e):
            s += (-1) ** (n - 1) * n * e[n]
        power_sums.append(s)
    return [c.q**n + 1 - s for n, s in zip(range(1, D + 1), power_sums)]


def curve_places(c: CurveZeta, D: int) -> list[int]:
    """Places of the function field of C by degree 1..D."""
    if c.genus == 0:
        return places_by_degree(c.q, D)
    counts = point_counts(c, D)
    out = []
    for d in range(1, D + 1):
        total = sum(int(mobius(d // e)) * counts[e - 1] for e in divisors(d))
        out.append(total // d)
    return out


def euler_product(c: CurveZeta, m: int, D: int) -> float:
    """Π_{deg p <= D} (1 - q_p^{-m})^{-1}, a truncation of ζ_C(m)."""
    log_sum = 0.0
    for d, count in enumerate(curve_places(c, D), start=1):
        log_sum -= count * math.log1p(-float(c.q) ** (-m * d))
    return math.exp(log_sum)
