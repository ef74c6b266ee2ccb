"""Rational points of bounded height on P^n over F_q(t).

A point has a unique representative with coprime polynomial coordinates
whose first nonzero coordinate is monic; its height is q^{max degree}.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Callable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from typing import Any

from ..errors import ConfigurationError
from ..limits import SCAN_THRESHOLD, check_work
from .field import all_polys, factor_degrees, finite_field, is_coprime, monic_polys
from .types import CountTable, Poly, ProjPoint, Strategy

logger = logging.getLogger(__name__)


def _validate(n: int, q: int, max_degree: int) -> None:
    if n < 1:
        raise ConfigurationError(f"projective dimension must be >= 1, got {n}")
    if max_degree < 0:
        raise ConfigurationError(f"max degree must be >= 0, got {max_degree}")
    finite_field(q)


def _leads(q: int, max_degree: int) -> list[Poly]:
    F = finite_field(q)
    return [f for d in range(max_degree + 1) for f in monic_polys(F, d)]


# ============================================================================
# Exhaustive scan
# ============================================================================


def iter_points(n: int, q: int, max_degree: int) -> Iterator[ProjPoint]:
    """Every canonical point of P^n(F_q(t)) of height <= q^max_degree."""
    _validate(n, q, max_degree)
    F = finite_field(q)
    polys = list(all_polys(F, max_degree))
    for lead in range(n + 1):
        zeros: tuple[Poly, ...] = ((),) * lead
        for f in _leads(q, max_degree):
            for rest in itertools.product(polys, repeat=n - lead):
                if f == (1,) or is_coprime(F, (f,) + rest):
                    yield ProjPoint(zeros + (f,) + rest)


def _scan_block(args: tuple[int, int, int, int, list[Poly]]) -> list[int]:
    """Counts by height degree of the points whose first nonzero coordinate is
    at index `lead` and lies in `block`."""
    n, q, max_degree, lead, block = args
    F = finite_field(q)
    polys = list(all_polys(F, max_degree))
    counts = [0] * (max_degree + 1)
    for f in block:
        for rest in itertools.product(polys, repeat=n - lead):
            if f == (1,) or is_coprime(F, (f,) + rest):
                counts[max(len(c) for c in (f,) + rest) - 1] += 1
    return counts


# ============================================================================
# Sieve over leading coordinates
# ============================================================================


def _completions(q: int, n: int, max_degree: int, deg_f: int, factors: tuple[int, ...]) -> list[int]:
    """For each d >= deg f: the number of canonical points with leading monic
    coordinate f and every later coordinate of degree <= d, summed over the
    position of f. Coprime tails are counted by Möbius inversion over rad f:
    q^{m(d+1-Σe)}·Π (q^{m·e} - 1)."""
    out = [0] * (max_degree + 1)
    for d in range(deg_f, max_degree + 1):
        total = 0
        for m in range(1, n + 1):
            term = q ** (m * (d + 1 - sum(factors)))
            for e in factors:
                term *= q ** (m * e) - 1
            total += term
        out[d] = total
    return out


def _sieve_block(args: tuple[int, int, int, list[Poly]]) -> list[int]:
    n, q, max_degree, block = args
    degrees, _ = factor_degrees(q, max_degree)
    out = [0] * (max_degree + 1)
    for f in block:
        part = _completions(q, n, max_degree, len(f) - 1, degrees.get(f, ()))
        out = [a + b for a, b in zip(out, part)]
    return out


# ============================================================================
# enumerate_projective
# ============================================================================


def _chunks(items: list[Poly], parts: int) -> list[list[Poly]]:
    size = max(1, -(-len(items) // parts))
    return [items[i:i + size] for i in range(0, len(items), size)]


def _run(worker: Callable[[Any], list[int]], tasks: Sequence[Any], jobs: int) -> list[list[int]]:
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(worker, tasks))
    return [worker(task) for task in tasks]


def _sum_columns(rows: list[list[int]], width: int) -> list[int]:
    return [sum(row[i] for row in rows) for i in range(width)]


def raw_tuple_count(n: int, q: int, max_degree: int) -> int:
    return q ** ((n + 1) * (max_degree + 1))


def enumerate_projective(
    n: int,
    q: int,
    max_degree: int,
    strategy: Strategy = "auto",
    jobs: int = 1,
) -> CountTable:
    """N(d) = #{x in P^n(F_q(t)) : H(x) = q^d} for 0 <= d <= max_degree."""
    _validate(n, q, max_degree)
    check_work(n + 1, q, max_degree)
    if strategy == "auto":
        strategy = "scan" if raw_tuple_count(n, q, max_degree) <= SCAN_THRESHOLD else "sieve"
    leads = _leads(q, max_degree)
    logger.info(
        "counting P^%d over F_%d(t) up to degree %d (%s, %d job(s))",
        n, q, max_degree, strategy, jobs,
    )

    if strategy == "scan":
        scan_tasks = [
            (n, q, max_degree, lead, chunk)
            for lead in range(n + 1)
            for chunk in (_chunks(leads, jobs) if lead < n else [[(1,)]])
        ]
        counts = _sum_columns(_run(_scan_block, scan_tasks, jobs), max_degree + 1)
    elif strategy == "sieve":
        factor_degrees(q, max_degree)
        sieve_tasks = [(n, q, max_degree, chunk) for chunk in _chunks(leads, jobs)]
        cumulative = _sum_columns(_run(_sieve_block, sieve_tasks, jobs), max_degree + 1)
        # the point (0 : ... : 0 : 1)
        cumulative = [c + 1 for c in cumulative]
        counts = [cumulative[0]] + [
            cumulative[d] - cumulative[d - 1] for d in range(1, max_degree + 1)
        ]
    else:
        raise ConfigurationError(f'Unknown counting strategy "{strategy}"')

    return CountTable(
        rank=1,
        counts={(d,): counts[d] for d in range(max_degree + 1)},
        max_degrees=(max_degree,),
    )
