"""Local densities, the Tamagawa number τ_H(V), β(V) and θ*(V) = α*·β·τ."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from .cone_lq import alpha_star
from .curve_zeta import CurveZeta, curve_places, curve_residue, zeta_at
from .eisenstein import local_c, rho_line, theorem_lhs
from .errors import ConfigurationError
from .limits import MIN_TRUNCATION_DEGREE
from .rational_fn import RatFn, ScaledLimit, horner, order_at
from .root_system import (
    RootSystem,
    longest_element,
    parabolic_datum,
    poincare_polynomial,
)

logger = logging.getLogger(__name__)

# ============================================================================
# Types
# ============================================================================


@dataclass(frozen=True, slots=True)
class LocalFactors:
    q_p: int
    d_p: Fraction
    # (1 - q_p^{-1})^{-t}
    lambda_p: Fraction
    mu_p: Fraction


@dataclass(frozen=True, slots=True)
class TruncatedTamagawa:
    """Coefficient of (log q)^{-t} of τ from places of degree <= degree."""

    value: float
    tail: float
    degree: int


@dataclass(frozen=True, slots=True)
class Prediction:
    alpha_star: Fraction
    beta: int
    tau: ScaledLimit
    theta_star: ScaledLimit
    lhs: ScaledLimit
    truncated_tau: TruncatedTamagawa | None = None

    @property
    def identity_holds(self) -> bool:
        return self.lhs == self.theta_star


# ============================================================================
# Local factors
# ============================================================================


def local_density(rs: RootSystem, I: frozenset[int] | set[int], q_p: int) -> Fraction:
    """d_p = #V(F_p) / q_p^{dim V}."""
    pd = parabolic_datum(rs, I)
    points = horner(poincare_polynomial(rs, pd.I), q_p)
    return Fraction(points, q_p**pd.dim_V)


def local_volume(q_p: int, rs: RootSystem, I: frozenset[int] | set[int]) -> Fraction:
    """c_p(w_Δ, ρ) / c_p(w̄_I, ρ), as the limit of the ratio along ρ + u·ρ."""
    wl = rho_line(rs, rs.rho)
    top = local_c(rs, longest_element(rs, frozenset(range(rs.rank))), wl, q_p)
    ratio: RatFn = top / local_c(rs, longest_element(rs, frozenset(I)), wl, q_p)
    order, leading = order_at(ratio, 1)
    if order != 0:
        raise ArithmeticError(f"local c-ratio has order {order} at ρ for {rs}, q_p = {q_p}")
    return leading


def local_factors(rs: RootSystem, I: frozenset[int] | set[int], q_p: int) -> LocalFactors:
    pd = parabolic_datum(rs, I)
    d_p = local_density(rs, pd.I, q_p)
    mu_p = local_volume(q_p, rs, pd.I)
    if mu_p != d_p:
        raise ArithmeticError(
            f"local volume {mu_p} differs from local density {d_p} for {rs}, q_p = {q_p}"
        )
    return LocalFactors(
        q_p=q_p,
        d_p=d_p,
        lambda_p=(1 - Fraction(1, q_p)) ** -pd.t,
        mu_p=mu_p,
    )


def _deviation_polynomial(rs: RootSystem, I: frozenset[int] | set[int]) -> list[int]:
    """Coefficients of (1 - x)^t·P_{V}(x), so that λ_p^{-1}·d_p is its value at 1/q_p."""
    pd = parabolic_datum(rs, I)
    poly = RatFn.from_coeffs(poincare_polynomial(rs, pd.I)) * RatFn.one_minus(1, 1) ** pd.t
    return [int(c) for c in poly.num_coeffs]


def convergence_constant(rs: RootSystem, I: frozenset[int] | set[int]) -> int:
    """C with |λ_p^{-1}·d_p - 1| <= C·q_p^{-2} at every place."""
    coeffs = _deviation_polynomial(rs, I)
    if coeffs[0] != 1 or (len(coeffs) > 1 and coeffs[1] != 0):
        raise ArithmeticError(f"λ_p^{{-1}}·d_p - 1 is not O(q_p^-2) for {rs}")
    return sum(abs(c) for c in coeffs[2:])


def local_deviation(rs: RootSystem, I: frozenset[int] | set[int], q_p: int) -> Fraction:
    """|λ_p^{-1}·d_p - 1|."""
    f = local_factors(rs, I, q_p)
    return abs(f.d_p / f.lambda_p - 1)


# ============================================================================
# τ_H(V), β(V), θ*(V)
# ============================================================================


def beta(rs: RootSystem, I: frozenset[int] | set[int]) -> int:
    """#H^1(F, Pic V̄), trivial for split flag varieties."""
    return 1


def tamagawa_number(
    curve: CurveZeta, rs: RootSystem, I: frozenset[int] | set[int]
) -> ScaledLimit:
    """τ = res_{s=1}(ζ_C)^t·q^{(1-g)dim V}·Π_p λ_p^{-1}·μ_p.

    The Euler product telescopes to ζ_C(2)^{-t}·Π ζ_C(h)/ζ_C(h+1) over the
    radical roots of height h >= 2.
    """
    pd = parabolic_datum(rs, I)
    if pd.t == 0:
        raise ConfigurationError(f"I = Δ for {rs}: the variety is a point")
    euler = zeta_at(curve, 2) ** -pd.t
    for beta_root in pd.radical_roots:
        h = sum(beta_root)
        if h >= 2:
            euler *= zeta_at(curve, h) / zeta_at(curve, h + 1)
    normalization = Fraction(curve.q) ** ((1 - curve.genus) * pd.dim_V)
    return curve_residue(curve) ** pd.t * (normalization * euler)


def truncated_tamagawa(
    curve: CurveZeta, rs: RootSystem, I: frozenset[int] | set[int], degree: int
) -> TruncatedTamagawa:
    """τ with the Euler product cut at places of degree <= `degree`.

    Uses only the Poincaré polynomial and the place counts of C.
    """
    if degree < MIN_TRUNCATION_DEGREE:
        raise ConfigurationError(
            f"truncation degree must be >= {MIN_TRUNCATION_DEGREE}, got {degree}"
        )
    pd = parabolic_datum(rs, I)
    if pd.t == 0:
        raise ConfigurationError(f"I = Δ for {rs}: the variety is a point")
    coeffs = _deviation_polynomial(rs, pd.I)
    q = curve.q

    log_euler = 0.0
    for d, count in enumerate(curve_places(curve, degree), start=1):
        x = float(q) ** -d
        local = sum(c * x**k for k, c in enumerate(coeffs))
        log_euler += count * math.log(local)

    # tail: |log f| <= 2·C·q_p^{-2} and a_d <= (q^d + 2g·q^{d/2} + 1) / d
    bound = 2 * convergence_constant(rs, pd.I)
    tail_log = 0.0
    for d in range(degree + 1, degree + 200):
        places = (q**d + 2 * curve.genus * q ** (d / 2) + 1) / d
        tail_log += bound * places * float(q) ** (-2 * d)

    residue = float(curve_residue(curve).coeff) ** pd.t
    normalization = float(q) ** ((1 - curve.genus) * pd.dim_V)
    value = residue * normalization * math.exp(log_euler)
    logger.debug("truncated τ for %s, I=%s at degree %d: %r", rs, sorted(pd.I), degree, value)
    return TruncatedTamagawa(value=value, tail=value * math.expm1(tail_log), degree=degree)


def theta_star(curve: CurveZeta, rs: RootSystem, I: frozenset[int] | set[int]) -> ScaledLimit:
    pd = parabolic_datum(rs, I)
    return tamagawa_number(curve, rs, pd.I) * (alpha_star(pd) * beta(rs, pd.I))


def predict(
    curve: CurveZeta,
    rs: RootSystem,
    I: frozenset[int] | set[int],
    truncate: int | None = None,
) -> Prediction:
    """Both sides of the residue identity for V = P_I\\G over the function field of C."""
    pd = parabolic_datum(rs, I)
    tau = tamagawa_number(curve, rs, pd.I)
    a_star = alpha_star(pd)
    b = beta(rs, pd.I)
    prediction = Prediction(
        alpha_star=a_star,
        beta=b,
        tau=tau,
        theta_star=tau * (a_star * b),
        lhs=theorem_lhs(curve, rs, pd.I),
        truncated_tau=truncated_tamagawa(curve, rs, pd.I, truncate) if truncate else None,
    )
    if not prediction.identity_holds:
        logger.warning(
            "residue identity fails for %s, I=%s, q=%d: θ* = %s, lhs = %s",
            rs, sorted(pd.I), curve.q, prediction.theta_star, prediction.lhs,
        )
    return prediction
