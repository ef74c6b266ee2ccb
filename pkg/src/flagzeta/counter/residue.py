"""Empirical height zeta data: anticanonical shells, residues, growth and export."""

from __future__ import annotations

import csv
import io
import logging
import math
from fractions import Fraction
from typing import Any

from ..errors import ConfigurationError, InsufficientDataError
from ..rational_fn import RatFn, ScaledLimit, fit_rational, pole_order, s_limit
from ..root_system import ParabolicDatum
from .field import FiniteField, poly_divmod
from .types import CountTable, EmpiricalResidue, Poly, ProjPoint

logger = logging.getLogger(__name__)

MAX_FIT_SHIFT = 3


# ============================================================================
# Anticanonical shells
# ============================================================================


def complete_weight(table: CountTable, weights: tuple[int, ...]) -> int:
    """Largest K such that every multidegree of weight <= K lies in the box."""
    excluded = [a * (m + 1) for a, m in zip(weights, table.max_degrees)]
    if table.max_total is not None:
        excluded.append(min(weights) * (table.max_total + 1))
    return min(excluded) - 1


def shell_coefficients(table: CountTable, pd: ParabolicDatum, q: int) -> list[Fraction]:
    """c_k = Ñ_k·q^{-k}, Ñ_k the number of points of anticanonical height q^k."""
    weights = pd.anticanonical_coords
    if table.rank != len(weights):
        raise ConfigurationError(
            f"count table of rank {table.rank} does not match Picard rank {len(weights)}"
        )
    top = complete_weight(table, weights)
    shells = [0] * (top + 1)
    for degrees, count in table.counts.items():
        if not table.in_box(degrees):
            raise ConfigurationError(
                f"count for degrees {degrees} lies outside the table's box"
            )
        k = sum(a * d for a, d in zip(weights, degrees))
        if k <= top:
            shells[k] += count
    return [Fraction(n, q**k) for k, n in enumerate(shells)]


# ============================================================================
# Residue
# ============================================================================


def _exact_residue(coeffs: list[Fraction], t: int, q: int, period: int) -> ScaledLimit | None:
    """Fit the series in y = x^period after `shift` leading terms and take
    lim (s-1)^t of the reassembled series in x.

    Shell weights are multiples of `period`; every coefficient of the
    compressed series, held-out ones included, sits at an attainable weight.
    A fit whose pole at x = 1 is not of order t is rejected.
    """
    data = coeffs[::period]
    for shift in range(MAX_FIT_SHIFT + 1):
        tail = data[shift:]
        max_den = (len(tail) - 2) // 2
        if max_den < 0:
            break
        fit = fit_rational(tail, max_den)
        if fit is None:
            continue
        head = RatFn.from_coeffs(data[:shift]) if shift else RatFn.constant(0)
        series = (head + RatFn.monomial(1, shift) * fit).substitute_monomial(1, period)
        order = pole_order(series, 1)
        if order != t:
            logger.warning(
                "fitted height zeta has a pole of order %d at s = 1, expected %d", order, t
            )
            return None
        return s_limit(series, t, q)
    return None


def _extrapolated(coeffs: list[Fraction], t: int, period: int) -> float:
    """t!·(leading coefficient) of the degree-t polynomial through the
    cumulative sums S(K - j·period), j = 0..t."""
    top = len(coeffs) - 1
    nodes = [top - j * period for j in range(t + 1)]
    if nodes[-1] < 0:
        raise InsufficientDataError(
            f"need weights down to {nodes[-1]} for a degree-{t} extrapolation"
        )
    partial = [sum(coeffs[: k + 1], Fraction(0)) for k in nodes]
    lead = Fraction(0)
    for i, (k_i, s_i) in enumerate(zip(nodes, partial)):
        denom = Fraction(1)
        for j, k_j in enumerate(nodes):
            if j != i:
                denom *= k_i - k_j
        lead += s_i / denom
    return float(lead * math.factorial(t))


def empirical_residue(table: CountTable, pd: ParabolicDatum, q: int) -> EmpiricalResidue:
    """Residue of Σ_k c_k·x^k at x = 1 (x = q^{-(s-1)}) with a pole of order t.

    `exact` is set when a rational fit reproduces every coefficient;
    `estimate` is always the coefficient of (log q)^{-t} read off the growth
    of the cumulative sums.
    """
    coeffs = shell_coefficients(table, pd, q)
    t = pd.t
    if len(coeffs) < t + 3:
        raise InsufficientDataError(
            f"{len(coeffs)} anticanonical shells are too few for a pole of order {t} "
            f"(need {t + 3})"
        )
    period = math.gcd(*pd.anticanonical_coords)
    exact = _exact_residue(coeffs, t, q, period)
    if exact is None:
        logger.warning(
            "no rational fit of %d shell coefficients; falling back to extrapolation",
            len(coeffs),
        )
    estimate = _extrapolated(coeffs, t, period)
    return EmpiricalResidue(exact=exact, estimate=estimate, coefficients=coeffs)


# ============================================================================
# Growth and heights
# ============================================================================


def growth_constant(table: CountTable, n: int, q: int) -> Fraction:
    """max_d N(d)·q^{-d(n+1)}, the constant in N(d) <= C·q^{d(n+1)}."""
    if table.rank != 1:
        raise ConfigurationError("growth_constant expects a projective-space table")
    return max(Fraction(count, q ** (d * (n + 1))) for (d,), count in table.counts.items())


def _valuation(F: FiniteField, a: Poly, pi: Poly) -> int:
    v = 0
    while True:
        quo, rem = poly_divmod(F, a, pi)
        if rem:
            return v
        a, v = quo, v + 1


def height_by_places(
    point: ProjPoint | tuple[Poly, ...], F: FiniteField, irreducibles: tuple[Poly, ...]
) -> Fraction:
    """Π_v max_i |x_i|_v over every place of F_q(t).

    `irreducibles` must contain every monic irreducible of degree up to the
    largest coordinate degree.
    """
    coords = point.coords if isinstance(point, ProjPoint) else tuple(point)
    nonzero = [c for c in coords if c]
    if not nonzero:
        raise ConfigurationError("the zero tuple is not a projective point")
    # the place at infinity: |x|_∞ = q^{deg x}
    log_height = max(len(c) - 1 for c in nonzero)
    top = min(len(c) - 1 for c in nonzero)
    for pi in irreducibles:
        if len(pi) - 1 > top:
            continue
        low = min(_valuation(F, c, pi) for c in nonzero)
        log_height -= (len(pi) - 1) * low
    return Fraction(F.q) ** log_height


# ============================================================================
# Export
# ============================================================================


def _header(table: CountTable) -> list[str]:
    return [f"d{i + 1}" for i in range(table.rank)] + ["count"]


def table_to_csv(table: CountTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_header(table))
    for degrees in sorted(table.counts):
        writer.writerow([*degrees, table.counts[degrees]])
    return buf.getvalue()


def table_to_json(table: CountTable) -> dict[str, Any]:
    return {
        "rank": table.rank,
        "max_degrees": list(table.max_degrees),
        "max_total": table.max_total,
        "counts": [
            {"degrees": list(degrees), "count": table.counts[degrees]}
            for degrees in sorted(table.counts)
        ],
    }
