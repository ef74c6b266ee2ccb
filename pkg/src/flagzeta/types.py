from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from .rational_fn import ScaledLimit

# ============================================================================
# Test varieties: how each is realized as P_I\G and how it is counted
# ============================================================================

VarietyName = Literal["P1", "P2", "P3", "P4", "P1xP1", "FL3"]

CountKind = Literal["projective", "product", "flag"]


@dataclass(frozen=True, slots=True)
class Variety:
    name: str
    group: str
    # 1-based simple roots of I, as typed on the command line
    parabolic: str
    kind: CountKind
    # projective dimension for kind == "projective"
    n: int = 0

    @property
    def tolerance_key(self) -> str:
        return "flag" if self.kind == "flag" else "projective"


VARIETIES: dict[str, Variety] = {
    "P1": Variety("P1", "A1", "", "projective", 1),
    "P2": Variety("P2", "A2", "2", "projective", 2),
    "P3": Variety("P3", "A3", "2,3", "projective", 3),
    "P4": Variety("P4", "A4", "2,3,4", "projective", 4),
    "P1xP1": Variety("P1xP1", "A1xA1", "", "product"),
    "FL3": Variety("FL3", "A2", "", "flag"),
}


# ============================================================================
# Verify options & report
# ============================================================================


@dataclass(slots=True)
class VerifyOptions:
    q: int = 2
    # None picks a per-variety default that stays under the work cap
    max_degree: int | None = None
    truncate: int = 12
    jobs: int = 1
    timings: bool = False


@dataclass(slots=True)
class EmpiricalCheck:
    max_degree: int
    exact: ScaledLimit | None
    exact_match: bool | None
    estimate: float
    relative_error: float
    threshold: float

    @property
    def passed(self) -> bool:
        if self.exact_match is not None:
            return self.exact_match
        return self.relative_error <= self.threshold


@dataclass(slots=True)
class VerifyReport:
    variety: str
    group: str
    # 1-based indices of I
    parabolic: list[int]
    q: int
    theta_star: ScaledLimit
    lhs: ScaledLimit
    tau_truncated_relerr: float
    truncation_tolerance: float
    empirical: EmpiricalCheck
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def identity_holds(self) -> bool:
        return (
            self.theta_star.coeff == self.lhs.coeff
            and self.theta_star.logq_pow == self.lhs.logq_pow
        )

    @property
    def passed(self) -> bool:
        return (
            self.identity_holds
            and self.tau_truncated_relerr <= self.truncation_tolerance
            and self.empirical.passed
        )
