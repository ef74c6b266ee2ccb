"""The finite field F_q and polynomials over it.

Field elements are ints 0..q-1: the element Σ c_i·z^i of F_p[z]/(m) is
encoded as Σ c_i·p^i, with m the first monic irreducible of degree k
(lexicographic in its lower coefficients) so tables are reproducible.
"""

from __future__ import annotations

import functools
import itertools
from collections.abc import Iterator
from dataclasses import dataclass

from sympy import factorint
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_rem, gf_strip

from ..errors import ConfigurationError
from .types import Poly

# ============================================================================
# F_q
# ============================================================================


@dataclass(frozen=True, slots=True)
class FiniteField:
    q: int
    p: int
    k: int
    # modulus over F_p, leading coefficient first (galoistools order)
    modulus: tuple[int, ...]
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    neg: tuple[int, ...]
    inv: tuple[int, ...]

    def sub(self, a: int, b: int) -> int:
        return self.add[a][self.neg[b]]


def _digits(value: int, p: int, k: int) -> list[int]:
    return [(value // p**i) % p for i in range(k)]


def _undigits(coeffs: list[int], p: int) -> int:
    return sum(c * p**i for i, c in enumerate(coeffs))


def _find_modulus(p: int, k: int) -> list[int]:
    if k == 1:
        return [1, 0]
    for low in range(p**k):
        # galoistools lists run from the leading coefficient down
        candidate = [1] + list(reversed(_digits(low, p, k)))
        if gf_irreducible_p(candidate, p, ZZ):
            return candidate
    raise ArithmeticError(f"no irreducible polynomial of degree {k} over F_{p}")


@functools.cache
def finite_field(q: int) -> FiniteField:
    factors = factorint(q)
    if q < 2 or len(factors) != 1:
        raise ConfigurationError(f"q = {q} is not a prime power")
    ((p, k),) = factors.items()
    modulus = _find_modulus(p, k)

    def as_gf(a: int) -> list[int]:
        return gf_strip(list(reversed(_digits(a, p, k))))

    def from_gf(coeffs: list[int]) -> int:
        return _undigits([int(c) % p for c in reversed(coeffs)], p)

    add = tuple(
        tuple(
            _undigits([(x + y) % p for x, y in zip(_digits(a, p, k), _digits(b, p, k))], p)
            for b in range(q)
        )
        for a in range(q)
    )
    mul = tuple(
        tuple(from_gf(gf_rem(gf_mul(as_gf(a), as_gf(b), p, ZZ), modulus, p, ZZ)) for b in range(q))
        for a in range(q)
    )
    neg = tuple(row.index(0) for row in add)
    inv = tuple([0] + [mul[a].index(1) for a in range(1, q)])
    return FiniteField(
        q=q, p=p, k=k, modulus=tuple(modulus), add=add, mul=mul, neg=neg, inv=inv
    )


# ============================================================================
# Polynomials over F_q
# ============================================================================


def trim(coeffs: list[int] | tuple[int, ...]) -> Poly:
    end = len(coeffs)
    while end and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


def degree(a: Poly) -> int:
    """Degree of a, -1 for the zero polynomial."""
    return len(a) - 1


def poly_add(F: FiniteField, a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add[out[i]][c]
    return trim(out)


def poly_sub(F: FiniteField, a: Poly, b: Poly) -> Poly:
    return poly_add(F, a, tuple(F.neg[c] for c in b))


def poly_scale(F: FiniteField, a: Poly, c: int) -> Poly:
    if c == 0:
        return ()
    return tuple(F.mul[c][x] for x in a)


def poly_mul(F: FiniteField, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    add, mul = F.add, F.mul
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            row = mul[x]
            for j, y in enumerate(b):
                out[i + j] = add[out[i + j]][row[y]]
    return trim(out)


def poly_divmod(F: FiniteField, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    lead_inv = F.inv[b[-1]]
    quo = [0] * max(len(a) - db, 0)
    for shift in range(len(a) - 1 - db, -1, -1):
        c = F.mul[rem[shift + db]][lead_inv]
        if c:
            quo[shift] = c
            for j, y in enumerate(b):
                rem[shift + j] = F.sub(rem[shift + j], F.mul[c][y])
    return trim(quo), trim(rem[:db] if db else [])


def poly_monic(F: FiniteField, a: Poly) -> Poly:
    if not a:
        return ()
    return poly_scale(F, a, F.inv[a[-1]])


def poly_gcd(F: FiniteField, a: Poly, b: Poly) -> Poly:
    """Monic gcd (the zero polynomial only when both are zero)."""
    while b:
        a, b = b, poly_divmod(F, a, b)[1]
    return poly_monic(F, a)


def is_coprime(F: FiniteField, polys: tuple[Poly, ...] | list[Poly]) -> bool:
    g: Poly = ()
    for a in polys:
        g = poly_gcd(F, g, a) if g else poly_monic(F, a)
        if len(g) == 1:
            return True
    return len(g) == 1


def all_polys(F: FiniteField, max_degree: int) -> Iterator[Poly]:
    """Every polynomial of degree <= max_degree, zero included."""
    for coeffs in itertools.product(range(F.q), repeat=max_degree + 1):
        yield trim(coeffs[::-1])


def monic_polys(F: FiniteField, deg: int) -> Iterator[Poly]:
    """Every monic polynomial of exact degree `deg`."""
    for low in itertools.product(range(F.q), repeat=deg):
        yield tuple(low[::-1]) + (1,)


# ============================================================================
# Sieve of irreducibles over F_q[t]
# ============================================================================


@functools.cache
def factor_degrees(q: int, max_degree: int) -> tuple[dict[Poly, tuple[int, ...]], tuple[Poly, ...]]:
    """Degrees of the distinct monic irreducible factors of every monic
    polynomial of degree 1..max_degree, and the irreducibles themselves."""
    F = finite_field(q)
    marks: dict[Poly, list[int]] = {}
    irreducibles: list[Poly] = []
    cofactors = [[(1,)]] + [list(monic_polys(F, d)) for d in range(1, max_degree + 1)]
    for d in range(1, max_degree + 1):
        for f in cofactors[d]:
            if f in marks:
                continue
            irreducibles.append(f)
            for e in range(0, max_degree - d + 1):
                for h in cofactors[e]:
                    marks.setdefault(poly_mul(F, f, h), []).append(d)
    return {f: tuple(sorted(m)) for f, m in marks.items()}, tuple(irreducibles)
