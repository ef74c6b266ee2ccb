"""Intertwining c-functions along integral lines of weights, the constants C_P
and the Eisenstein side of the residue identity.

A line λ(u) = base + u·direction is stored through its coroot pairings, so
every exponent e_α(u) = <base, α∨> + u·<direction, α∨> is an exact integer
affine function and every c-function is a rational function of y = q^{-u}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curve_zeta import CurveZeta, zeta_line
from .errors import ConfigurationError
from .rational_fn import RatFn, ScaledLimit, pole_order, s_limit
from .root_system import (
    RootSystem,
    Vector,
    WeylElt,
    inverted_roots,
    longest_element,
    parabolic_datum,
    weight_action,
    weyl_group,
)

# ============================================================================
# Types
# ============================================================================


@dataclass(frozen=True, slots=True)
class WeightLine:
    base: Vector
    direction: Vector
    # <base, α∨> and <direction, α∨>, indexed like rs.positive_roots
    base_pairings: tuple[int, ...]
    direction_pairings: tuple[int, ...]

    def exponent(self, index: int) -> tuple[int, int]:
        """(b, d) with e_α(u) = b + u·d for the positive root at `index`."""
        return self.base_pairings[index], self.direction_pairings[index]


def line(rs: RootSystem, base: Vector, direction: Vector) -> WeightLine:
    if len(base) != rs.rank or len(direction) != rs.rank:
        raise ConfigurationError(
            f"weights {base}, {direction} do not have rank {rs.rank} coordinates"
        )
    return WeightLine(
        base=tuple(base),
        direction=tuple(direction),
        base_pairings=tuple(rs.pairing(base, c) for c in rs.positive_coroots),
        direction_pairings=tuple(rs.pairing(direction, c) for c in rs.positive_coroots),
    )


def rho_line(rs: RootSystem, direction: Vector) -> WeightLine:
    """The line ρ + u·direction."""
    return line(rs, rs.rho, direction)


def act(rs: RootSystem, w: WeylElt, wl: WeightLine) -> WeightLine:
    """w·λ(u), applied to base and direction separately."""
    return line(rs, weight_action(rs, w, wl.base), weight_action(rs, w, wl.direction))


def _inverted_exponents(rs: RootSystem, w: WeylElt, wl: WeightLine) -> list[tuple[int, int]]:
    inverted = inverted_roots(rs, w)
    return [
        wl.exponent(k) for k, beta in enumerate(rs.positive_roots) if beta in inverted
    ]


# ============================================================================
# Local and global c-functions
# ============================================================================


def local_c(rs: RootSystem, w: WeylElt, wl: WeightLine, q_p: int) -> RatFn:
    """Π_{α>0, wα<0} (1 - q_p^{-(e_α+1)}) / (1 - q_p^{-e_α}) in y = q_p^{-u}."""
    out = RatFn.constant(1)
    for b, d in _inverted_exponents(rs, w, wl):
        if d == 0 and b == 0:
            raise ConfigurationError(
                f"exponent identically 0 along the line {wl.base} + u·{wl.direction}"
            )
        out = out * RatFn.one_minus(Fraction(1, q_p) ** (b + 1), d)
        out = out / RatFn.one_minus(Fraction(1, q_p) ** b, d)
    return out


def global_c(curve: CurveZeta, rs: RootSystem, w: WeylElt, wl: WeightLine) -> RatFn:
    """q^{(1-g)ℓ(w)}·Π_{α>0, wα<0} ζ_C(e_α) / ζ_C(e_α + 1) in y = q^{-u}."""
    out = RatFn.constant(Fraction(curve.q) ** ((1 - curve.genus) * w.length))
    for b, d in _inverted_exponents(rs, w, wl):
        if d == 0 and b in (-1, 0, 1):
            raise ConfigurationError(
                f"constant exponent {b} puts ζ_C at its pole along "
                f"{wl.base} + u·{wl.direction}"
            )
        out = out * zeta_line(curve, b, d) / zeta_line(curve, b + 1, d)
    return out


# ============================================================================
# The constants C_P and the Eisenstein-side residue
# ============================================================================


def _check_generic(J: frozenset[int], direction: Vector) -> None:
    bad = [j + 1 for j in sorted(J) if direction[j] <= 0]
    if bad:
        raise ConfigurationError(
            f"direction {tuple(direction)} is not generic: pairing with "
            f"simple coroot(s) {bad} must be positive"
        )


def c_constant(
    curve: CurveZeta, rs: RootSystem, J: frozenset[int] | set[int], direction: Vector
) -> ScaledLimit:
    """lim_{u->0} (Π_{α in J} u·<direction, α∨>)·c(w̄_J, ρ + u·direction)."""
    J = frozenset(J)
    _check_generic(J, direction)
    wl = rho_line(rs, direction)
    f = global_c(curve, rs, longest_element(rs, J), wl)
    scale = Fraction(1)
    for j in J:
        scale *= direction[j]
    return s_limit(f, len(J), curve.q) * scale


def theorem_lhs(
    curve: CurveZeta, rs: RootSystem, I: frozenset[int] | set[int]
) -> ScaledLimit:
    """Π_{α in Δ-I} <α∨, 2ρ_P>^{-1}·C_G / C_P."""
    pd = parabolic_datum(rs, I)
    if pd.t == 0:
        raise ConfigurationError(f"I = Δ for {rs}: the variety is a point")
    c_g = c_constant(curve, rs, frozenset(range(rs.rank)), rs.rho)
    c_p = c_constant(curve, rs, pd.I, rs.rho)
    weight = Fraction(1)
    for a in pd.anticanonical_coords:
        weight /= a
    return c_g / c_p * weight


def residue_function(
    curve: CurveZeta,
    rs: RootSystem,
    I: frozenset[int] | set[int],
    direction: Vector | None = None,
) -> RatFn:
    """c(w_Δ, ρ + u·direction) / c(w̄_I, ρ + u·direction) as a function of y."""
    direction = rs.rho if direction is None else direction
    _check_generic(frozenset(range(rs.rank)), direction)
    wl = rho_line(rs, direction)
    top = global_c(curve, rs, longest_element(rs, frozenset(range(rs.rank))), wl)
    return top / global_c(curve, rs, longest_element(rs, frozenset(I)), wl)


def residue_pole_order(
    curve: CurveZeta, rs: RootSystem, I: frozenset[int] | set[int]
) -> int:
    return pole_order(residue_function(curve, rs, I), 1)


def borel_height_zeta(curve: CurveZeta, rs: RootSystem) -> RatFn:
    """Σ_{w in W} c(w, ρ + u·2ρ) in y = q^{-u}.

    Along this line y equals x = q^{-(s-1)}; for a rational base curve the
    Taylor coefficients at x = 0 are the anticanonical counts Ñ_k·q^{-k} of
    the full flag variety of G.
    """
    wl = rho_line(rs, tuple(2 * c for c in rs.rho))
    out = RatFn.constant(0)
    for w in weyl_group(rs):
        out = out + global_c(curve, rs, w, wl)
    return out
