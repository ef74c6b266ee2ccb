"""Root data, Weyl groups and parabolic data of split simply connected groups.

Roots are integer vectors in the simple-root basis, coroots in the
simple-coroot basis and weights in the fundamental-weight basis, so every
pairing <λ, α∨> is an exact integer dot product.
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass, field
from typing import Literal

from .errors import ConfigurationError, WorkCapError
from .limits import MAX_TOTAL_RANK, MAX_WEYL_ORDER
from .rational_fn import RatFn, poly_coeffs, poly_from_coeffs

Family = Literal["A", "B", "C", "D", "G"]

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

# ============================================================================
# Types
# ============================================================================


@dataclass(frozen=True, slots=True)
class RootSystem:
    factors: tuple[tuple[Family, int], ...]
    # cartan[i][j] = <α_j, α_i∨>
    cartan: Matrix
    # d_i = (α_i, α_i) / 2
    symmetrizer: Vector
    # positive roots sorted by height, simple-root coordinates
    positive_roots: tuple[Vector, ...]
    # coroot of positive_roots[k], simple-coroot coordinates
    positive_coroots: tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def simple_roots(self) -> tuple[Vector, ...]:
        return _identity(self.rank)

    @property
    def simple_coroots(self) -> tuple[Vector, ...]:
        return _identity(self.rank)

    @property
    def fundamental_weights(self) -> tuple[Vector, ...]:
        return _identity(self.rank)

    @property
    def rho(self) -> Vector:
        return (1,) * self.rank

    def coroot(self, root: Vector) -> Vector:
        return self.positive_coroots[self.positive_roots.index(root)]

    def root_to_weight(self, root: Vector) -> Vector:
        """Express a root-lattice vector in fundamental-weight coordinates."""
        a = self.cartan
        return tuple(
            sum(a[j][i] * root[i] for i in range(self.rank)) for j in range(self.rank)
        )

    def pairing(self, weight: Vector, coroot: Vector) -> int:
        """<λ, β∨> for λ in weight coordinates and β∨ in coroot coordinates."""
        return sum(w * c for w, c in zip(weight, coroot))

    def __str__(self) -> str:
        return "x".join(f"{fam}{n}" for fam, n in self.factors)


@dataclass(frozen=True, slots=True)
class WeylElt:
    # a reduced word in simple reflections (0-based indices)
    word: tuple[int, ...]
    # action on the root lattice in the simple-root basis
    matrix: Matrix

    @property
    def length(self) -> int:
        return len(self.word)

    def apply(self, root: Vector) -> Vector:
        return tuple(sum(row[j] * root[j] for j in range(len(root))) for row in self.matrix)


@dataclass(frozen=True, slots=True)
class ParabolicDatum:
    root_system: RootSystem
    I: frozenset[int]
    complement: tuple[int, ...]
    # 2ρ_P in fundamental-weight coordinates
    two_rho_P: Vector
    # indices α in Δ-I; the Picard basis is (ϖ_α)
    picard_basis: tuple[int, ...]
    # a_α = <α∨, 2ρ_P> for α in Δ-I
    anticanonical_coords: tuple[int, ...]
    dim_V: int
    t: int
    lambda_P0: Vector
    radical_roots: tuple[Vector, ...] = field(default=())


# ============================================================================
# Cartan data
# ============================================================================


def _identity(n: int) -> tuple[Vector, ...]:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _gram(family: Family, n: int) -> list[list[int]]:
    """Symmetric matrix (α_i, α_j), Bourbaki numbering, short roots of square length 2."""
    if family == "A" and n >= 1:
        sq = [2] * n
        links = [(i, i + 1, -1) for i in range(n - 1)]
    elif family == "B" and n >= 2:
        sq = [4] * (n - 1) + [2]
        links = [(i, i + 1, -2) for i in range(n - 1)]
    elif family == "C" and n >= 2:
        sq = [2] * (n - 1) + [4]
        links = [(i, i + 1, -1) for i in range(n - 2)] + [(n - 2, n - 1, -2)]
    elif family == "D" and n >= 3:
        sq = [2] * n
        links = [(i, i + 1, -1) for i in range(n - 2)] + [(n - 3, n - 1, -1)]
    elif family == "G" and n == 2:
        sq = [2, 6]
        links = [(0, 1, -3)]
    else:
        raise ConfigurationError(f"Unsupported root system {family}{n}")
    gram = [[0] * n for _ in range(n)]
    for i, s in enumerate(sq):
        gram[i][i] = s
    for i, j, v in links:
        gram[i][j] = gram[j][i] = v
    return gram


def _weyl_order(family: Family, n: int) -> int:
    if family == "A":
        return math.factorial(n + 1)
    if family in ("B", "C"):
        return 2**n * math.factorial(n)
    if family == "D":
        return 2 ** (n - 1) * math.factorial(n)
    return 12


def _generate_roots(cartan: Matrix) -> list[Vector]:
    """Close the simple roots under simple reflections; return the positive ones."""
    n = len(cartan)
    roots: set[Vector] = set(_identity(n))
    frontier = list(roots)
    while frontier:
        nxt: list[Vector] = []
        for beta in frontier:
            for i in range(n):
                pairing = sum(beta[j] * cartan[i][j] for j in range(n))
                image = tuple(b - pairing if k == i else b for k, b in enumerate(beta))
                if image not in roots:
                    roots.add(image)
                    nxt.append(image)
        frontier = nxt
    positive = [r for r in roots if all(c >= 0 for c in r)]
    positive.sort(key=lambda r: (sum(r), tuple(-c for c in r)))
    return positive


def build_root_system(factors: list[tuple[str, int]] | tuple[tuple[str, int], ...]) -> RootSystem:
    """Assemble the root datum of a direct sum of simple types."""
    if not factors:
        raise ConfigurationError("A root system needs at least one factor")
    total = sum(n for _, n in factors)
    if total > MAX_TOTAL_RANK:
        raise ConfigurationError(f"Total rank {total} exceeds the supported {MAX_TOTAL_RANK}")

    gram = [[0] * total for _ in range(total)]
    offset = 0
    clean: list[tuple[Family, int]] = []
    for family, n in factors:
        fam = family.upper()
        if fam not in ("A", "B", "C", "D", "G"):
            raise ConfigurationError(f'Unsupported root system family "{family}"')
        block = _gram(fam, n)  # type: ignore[arg-type]
        for i in range(n):
            for j in range(n):
                gram[offset + i][offset + j] = block[i][j]
        offset += n
        clean.append((fam, n))  # type: ignore[arg-type]

    symmetrizer = tuple(gram[i][i] // 2 for i in range(total))
    cartan = tuple(
        tuple(gram[i][j] // symmetrizer[i] for j in range(total)) for i in range(total)
    )
    positive = _generate_roots(cartan)

    coroots: list[Vector] = []
    for beta in positive:
        half_sq = sum(
            beta[i] * beta[j] * gram[i][j] for i in range(total) for j in range(total)
        ) // 2
        coroots.append(tuple(beta[i] * symmetrizer[i] // half_sq for i in range(total)))

    return RootSystem(
        factors=tuple(clean),
        cartan=cartan,
        symmetrizer=symmetrizer,
        positive_roots=tuple(positive),
        positive_coroots=tuple(coroots),
    )


def parse_group(text: str) -> RootSystem:
    """Parse a group string such as "A2", "G2" or "A1xA1"."""
    pieces = [p for p in re.split(r"[xX×]", text.strip()) if p]
    factors: list[tuple[str, int]] = []
    for piece in pieces:
        m = re.fullmatch(r"([A-Za-z])(\d+)", piece.strip())
        if not m:
            raise ConfigurationError(
                f'Invalid group "{text}". Expected e.g. "A2", "B2", "G2", "A1xA1"'
            )
        factors.append((m.group(1).upper(), int(m.group(2))))
    if not factors:
        raise ConfigurationError(f'Invalid group "{text}"')
    return build_root_system(factors)


def parse_parabolic(text: str, rs: RootSystem) -> frozenset[int]:
    """Parse 1-based simple-root indices of I ("" is the Borel subgroup)."""
    text = text.strip()
    if not text:
        return frozenset()
    out: set[int] = set()
    for token in text.split(","):
        token = token.strip()
        if not token.isdigit() or not 1 <= int(token) <= rs.rank:
            raise ConfigurationError(
                f'Invalid parabolic index "{token}" for {rs} (expected 1..{rs.rank})'
            )
        out.add(int(token) - 1)
    return frozenset(out)


# ============================================================================
# Weyl group
# ============================================================================


def _reflection(rs: RootSystem, k: int) -> Matrix:
    n = rs.rank
    a = rs.cartan
    return tuple(
        tuple((1 if i == j else 0) - (a[k][j] if i == k else 0) for j in range(n))
        for i in range(n)
    )


def _matmul(m: Matrix, other: Matrix) -> Matrix:
    n = len(m)
    return tuple(
        tuple(sum(m[i][k] * other[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


@functools.cache
def _closure(rs: RootSystem, generators: frozenset[int]) -> tuple[WeylElt, ...]:
    """Breadth-first closure of {1} under right multiplication by s_k, k in generators."""
    reflections = {k: _reflection(rs, k) for k in sorted(generators)}
    start = WeylElt((), _identity(rs.rank))
    seen: dict[Matrix, WeylElt] = {start.matrix: start}
    frontier = [start]
    while frontier:
        nxt: list[WeylElt] = []
        for w in frontier:
            for k, s in reflections.items():
                m = _matmul(w.matrix, s)
                if m not in seen:
                    elt = WeylElt(w.word + (k,), m)
                    seen[m] = elt
                    nxt.append(elt)
                    if len(seen) > MAX_WEYL_ORDER:
                        raise WorkCapError(f"Weyl group exceeds {MAX_WEYL_ORDER} elements")
        frontier = nxt
    return tuple(seen.values())


def weyl_group(rs: RootSystem) -> tuple[WeylElt, ...]:
    """All elements of W, ordered by length, each with a reduced word."""
    order = math.prod(_weyl_order(fam, n) for fam, n in rs.factors)
    if order > MAX_WEYL_ORDER:
        raise WorkCapError(f"|W({rs})| = {order} exceeds {MAX_WEYL_ORDER}")
    return _closure(rs, frozenset(range(rs.rank)))


def parabolic_subgroup(rs: RootSystem, J: frozenset[int]) -> tuple[WeylElt, ...]:
    return _closure(rs, frozenset(J))


@functools.cache
def _by_matrix(rs: RootSystem) -> dict[Matrix, WeylElt]:
    return {w.matrix: w for w in weyl_group(rs)}


def identity(rs: RootSystem) -> WeylElt:
    return WeylElt((), _identity(rs.rank))


def simple_reflection(rs: RootSystem, k: int) -> WeylElt:
    return WeylElt((k,), _reflection(rs, k))


def multiply(rs: RootSystem, w1: WeylElt, w2: WeylElt) -> WeylElt:
    """w1·w2, carrying a reduced word."""
    return _by_matrix(rs)[_matmul(w1.matrix, w2.matrix)]


def _is_positive(v: Vector) -> bool:
    return all(c >= 0 for c in v)


def longest_element(rs: RootSystem, J: frozenset[int] | set[int]) -> WeylElt:
    """The longest element of W_J, grown one simple reflection at a time."""
    w = identity(rs)
    reflections = {k: _reflection(rs, k) for k in J}
    while True:
        for j in sorted(J):
            if _is_positive(w.apply(rs.simple_roots[j])):
                w = WeylElt(w.word + (j,), _matmul(w.matrix, reflections[j]))
                break
        else:
            return w


def inverted_roots(rs: RootSystem, w: WeylElt) -> frozenset[Vector]:
    """{α in Φ+ : wα < 0}."""
    return frozenset(
        beta for beta in rs.positive_roots if not _is_positive(w.apply(beta))
    )


def weight_action(rs: RootSystem, w: WeylElt, weight: Vector) -> Vector:
    """w·λ for λ in fundamental-weight coordinates."""
    a = rs.cartan
    out = list(weight)
    for k in reversed(w.word):
        coeff = out[k]
        if coeff:
            for j in range(rs.rank):
                out[j] -= coeff * a[j][k]
    return tuple(out)


# ============================================================================
# Parabolic data
# ============================================================================


def _support(root: Vector) -> frozenset[int]:
    return frozenset(i for i, c in enumerate(root) if c)


def parabolic_roots(rs: RootSystem, I: frozenset[int] | set[int]) -> tuple[Vector, ...]:
    """Φ_I+: positive roots supported on I."""
    return tuple(r for r in rs.positive_roots if _support(r) <= I)


def parabolic_datum(rs: RootSystem, I: frozenset[int] | set[int]) -> ParabolicDatum:
    I = frozenset(I)
    if not I <= frozenset(range(rs.rank)):
        raise ConfigurationError(f"Parabolic {sorted(I)} is not a subset of Δ for {rs}")
    levi = set(parabolic_roots(rs, I))
    radical = tuple(r for r in rs.positive_roots if r not in levi)
    total = tuple(sum(r[i] for r in radical) for i in range(rs.rank))
    two_rho_P = rs.root_to_weight(total)
    complement = tuple(i for i in range(rs.rank) if i not in I)

    if any(two_rho_P[i] != 0 for i in I):
        raise ConfigurationError(f"2ρ_P = {two_rho_P} is not a character of P_{sorted(I)}")
    coords = tuple(two_rho_P[i] for i in complement)
    if any(c <= 0 for c in coords):
        raise ConfigurationError(f"Anticanonical class {coords} is not interior to C_eff")

    return ParabolicDatum(
        root_system=rs,
        I=I,
        complement=complement,
        two_rho_P=two_rho_P,
        picard_basis=complement,
        anticanonical_coords=coords,
        dim_V=len(radical),
        t=len(complement),
        lambda_P0=rs.rho,
        radical_roots=radical,
    )


# ============================================================================
# Poincaré polynomials
# ============================================================================


def length_polynomial(elements: tuple[WeylElt, ...]) -> list[int]:
    """Σ x^{ℓ(w)} as a coefficient list from degree 0."""
    top = max(w.length for w in elements)
    out = [0] * (top + 1)
    for w in elements:
        out[w.length] += 1
    return out


def poincare_polynomial(rs: RootSystem, I: frozenset[int] | set[int]) -> list[int]:
    """Σ_{w in W^I} x^{ℓ(w)} = P_W(x) / P_{W_I}(x), exact division."""
    full = poly_from_coeffs(length_polynomial(weyl_group(rs)))
    levi = poly_from_coeffs(length_polynomial(parabolic_subgroup(rs, frozenset(I))))
    quotient, rem = full.div(levi)
    if rem:
        raise ArithmeticError(f"P_W is not divisible by P_W_I for {rs}, I = {sorted(I)}")
    return [int(c) for c in poly_coeffs(quotient)]


def macdonald_product(rs: RootSystem, I: frozenset[int] | set[int]) -> list[int]:
    """The same polynomial as Π (1 - x^{ht α + 1}) / (1 - x^{ht α}) over radical roots."""
    pd = parabolic_datum(rs, I)
    f = RatFn.constant(1)
    for beta in pd.radical_roots:
        h = sum(beta)
        f = f * RatFn.one_minus(1, h + 1) / RatFn.one_minus(1, h)
    if f.den_coeffs != [1]:
        raise ArithmeticError("height product is not a polynomial")
    return [int(c) for c in f.num_coeffs]
