"""Lattice-point generating functions of the dual effective cone and α*(V)."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from sympy import Matrix

from .errors import ConfigurationError, WorkCapError
from .limits import MAX_LATTICE_CAP
from .rational_fn import RatFn, s_limit
from .root_system import ParabolicDatum, Vector

# ============================================================================
# Types
# ============================================================================


@dataclass(frozen=True, slots=True)
class LatticeCone:
    rank: int
    generators: tuple[Vector, ...]
    # generators form a basis of the lattice
    unimodular: bool


def make_cone(generators: list[Vector] | tuple[Vector, ...]) -> LatticeCone:
    gens = tuple(tuple(int(c) for c in g) for g in generators)
    if not gens:
        raise ConfigurationError("A cone needs at least one generator")
    rank = len(gens[0])
    if any(len(g) != rank for g in gens):
        raise ConfigurationError("Cone generators must share one dimension")
    unimodular = len(gens) == rank and abs(Matrix(gens).det()) == 1
    return LatticeCone(rank=rank, generators=gens, unimodular=unimodular)


def effective_cone(pd: ParabolicDatum) -> LatticeCone:
    """C_eff of P\\G: the orthant on (ϖ_α)_{α in Δ-I} in Picard coordinates."""
    return make_cone([tuple(1 if i == j else 0 for j in range(pd.t)) for i in range(pd.t)])


def _interior_coords(cone: LatticeCone, a: Vector) -> tuple[int, ...]:
    """Coordinates a_i of a = Σ a_i·g_i, all required to be positive."""
    if not cone.unimodular:
        raise ConfigurationError(
            "non-unimodular cones are not supported (no fan subdivision)"
        )
    if len(a) != cone.rank:
        raise ConfigurationError(f"point {a} does not live in rank {cone.rank}")
    basis = Matrix(cone.generators).T
    solution = basis.LUsolve(Matrix(list(a)))
    coords = tuple(int(v) for v in solution)
    if any(c <= 0 for c in coords):
        raise ConfigurationError(f"point {tuple(a)} is not interior to the cone")
    return coords


# ============================================================================
# L_q along the anticanonical line
# ============================================================================


def lq_line(cone: LatticeCone, a: Vector, q: int) -> RatFn:
    """Π_i 1 / (1 - x^{a_i}) in x = q^{-(s-1)}: the dual-cone sum Σ_y q^{-(s-1)<y, a>}.

    The same function evaluated at x = q^{-s0} is the lattice sum
    Σ_y q^{-s0·<y, a>} computed by lq_bruteforce.
    """
    f = RatFn.constant(1)
    for coord in _interior_coords(cone, a):
        f = f / RatFn.one_minus(1, coord)
    return f


def lq_bruteforce(
    cone: LatticeCone, a: Vector, q: int, s0: int | Fraction, cap: int
) -> Fraction | float:
    """Σ q^{-s0·<y, a>} over dual-cone lattice points y with <y, a> <= cap."""
    if cap > MAX_LATTICE_CAP:
        raise WorkCapError(f"lattice cap {cap} exceeds {MAX_LATTICE_CAP}")
    s0 = Fraction(s0)
    if s0 <= 1:
        raise ConfigurationError(f"s0 must exceed 1 for convergence, got {s0}")
    coords = _interior_coords(cone, a)
    # y runs over the dual basis: <y, a> = Σ k_i·a_i with k_i >= 0
    levels: dict[int, int] = {}
    for k in itertools.product(*(range(cap // c + 1) for c in coords)):
        m = sum(ki * c for ki, c in zip(k, coords))
        if m <= cap:
            levels[m] = levels.get(m, 0) + 1
    if s0.denominator == 1:
        base = Fraction(1, q ** int(s0))
        return sum((n * base**m for m, n in sorted(levels.items())), Fraction(0))
    return sum(n * float(q) ** (-float(s0) * m) for m, n in sorted(levels.items()))


def lq_tail_bound(rank: int, q: int, s0: int | Fraction, cap: int) -> float:
    """Upper bound for the part of the lattice sum beyond <y, a> = cap."""
    ratio = float(q) ** (-float(s0))
    total = 0.0
    m = cap + 1
    while True:
        term = math.comb(m + rank - 1, rank - 1) * ratio**m
        total += term
        if term < 1e-18 * max(total, 1e-300) or m > cap + 2000:
            return total
        m += 1


# ============================================================================
# α*(V) and the characteristic function of the cone
# ============================================================================


def alpha_star(pd: ParabolicDatum) -> Fraction:
    """α*(V) = Π_{α in Δ-I} 1 / <α∨, 2ρ_P>."""
    out = Fraction(1)
    for c in pd.anticanonical_coords:
        out /= c
    return out


def alpha_star_via_limit(pd: ParabolicDatum, q: int) -> Fraction:
    """(log q)^t·lim_{s->1} (s-1)^t L_q((s-1)·ω^{-1})."""
    cone = effective_cone(pd)
    limit = s_limit(lq_line(cone, pd.anticanonical_coords, q), pd.t, q)
    if limit.logq_pow != -pd.t:
        raise ArithmeticError(f"L_q limit {limit} does not carry (log q)^-{pd.t}")
    return limit.coeff


def chi_value(cone: LatticeCone, a: Vector) -> Fraction:
    """χ_C(a) = Π 1/a_i, the volume integral over a unimodular dual cone."""
    out = Fraction(1)
    for c in _interior_coords(cone, a):
        out /= c
    return out
