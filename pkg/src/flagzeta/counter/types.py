from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from ..rational_fn import ScaledLimit

# ============================================================================
# Counter types
#
# Points of P^n over F_q(t) are tuples of polynomials over F_q. A polynomial
# is a tuple of field elements (ints 0..q-1) from degree 0 upward, with no
# trailing zeros; the zero polynomial is ().
# ============================================================================

Poly = tuple[int, ...]

Strategy = Literal["auto", "scan", "sieve"]


@dataclass(frozen=True, slots=True)
class ProjPoint:
    # coprime, first nonzero coordinate monic
    coords: tuple[Poly, ...]

    @property
    def degree(self) -> int:
        """log_q of the height: the largest coordinate degree."""
        return max(len(c) - 1 for c in self.coords)


@dataclass(slots=True)
class CountTable:
    # number of Picard gradings, 1 for P^n
    rank: int
    # multidegree -> number of points of that multi-height
    counts: dict[tuple[int, ...], int]
    # the box is d_i <= max_degrees[i] (and Σ d_i <= max_total when set)
    max_degrees: tuple[int, ...]
    max_total: int | None = None

    def in_box(self, degrees: tuple[int, ...]) -> bool:
        if any(d < 0 or d > m for d, m in zip(degrees, self.max_degrees)):
            return False
        return self.max_total is None or sum(degrees) <= self.max_total

    def __getitem__(self, degrees: tuple[int, ...]) -> int:
        return self.counts.get(degrees, 0)


@dataclass(slots=True)
class EmpiricalResidue:
    # exact limit when a rational fit of the shell series succeeds
    exact: ScaledLimit | None
    estimate: float
    # Ñ_k·q^{-k} for the complete anticanonical weights k = 0..len-1
    coefficients: list[Fraction] = field(default_factory=list)
