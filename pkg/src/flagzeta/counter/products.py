"""Points of bounded multi-height on P^1 x P^1 and on the SL_3 flag variety.

The flag variety is the incidence variety {(x, ℓ) in P^2 x (P^2)^∨ :
Σ x_i·ℓ_i = 0}, graded by the two O(1)'s; its anticanonical class is
O(2, 2).
"""

from __future__ import annotations

import functools
import logging
from concurrent.futures import ProcessPoolExecutor

from ..errors import ConfigurationError
from ..limits import check_work
from .field import finite_field
from .projective import enumerate_projective, iter_points
from .types import CountTable, Poly, ProjPoint

logger = logging.getLogger(__name__)


def _check_box(D1: int, D2: int, max_total: int | None) -> None:
    if D1 < 0 or D2 < 0:
        raise ConfigurationError(f"max degrees must be >= 0, got ({D1}, {D2})")
    if max_total is not None and max_total < 0:
        raise ConfigurationError(f"max total degree must be >= 0, got {max_total}")


def _box(D1: int, D2: int, max_total: int | None) -> list[tuple[int, int]]:
    return [
        (d1, d2)
        for d1 in range(D1 + 1)
        for d2 in range(D2 + 1)
        if max_total is None or d1 + d2 <= max_total
    ]


@functools.cache
def _points_by_degree(n: int, q: int, max_degree: int) -> tuple[tuple[ProjPoint, ...], ...]:
    buckets: list[list[ProjPoint]] = [[] for _ in range(max_degree + 1)]
    for point in iter_points(n, q, max_degree):
        buckets[point.degree].append(point)
    return tuple(tuple(b) for b in buckets)


# ============================================================================
# P^1 x P^1
# ============================================================================


def enumerate_p1xp1(
    q: int, D1: int, D2: int, max_total: int | None = None, jobs: int = 1
) -> CountTable:
    """N(d1, d2) = N_{P^1}(d1)·N_{P^1}(d2)."""
    _check_box(D1, D2, max_total)
    line = enumerate_projective(1, q, max(D1, D2), jobs=jobs)
    return CountTable(
        rank=2,
        counts={(d1, d2): line[(d1,)] * line[(d2,)] for d1, d2 in _box(D1, D2, max_total)},
        max_degrees=(D1, D2),
        max_total=max_total,
    )


def scan_p1xp1(q: int, D1: int, D2: int) -> CountTable:
    """Direct scan over pairs of canonical points."""
    _check_box(D1, D2, None)
    check_work(2, q, D1)
    check_work(2, q, D2)
    first = [p for bucket in _points_by_degree(1, q, D1) for p in bucket]
    second = [p for bucket in _points_by_degree(1, q, D2) for p in bucket]
    counts = {key: 0 for key in _box(D1, D2, None)}
    for x in first:
        for y in second:
            counts[(x.degree, y.degree)] += 1
    return CountTable(rank=2, counts=counts, max_degrees=(D1, D2))


# ============================================================================
# Full flag variety of SL_3
# ============================================================================


def _incident(q: int, x: tuple[Poly, ...], y: tuple[Poly, ...]) -> bool:
    """Σ x_i·y_i = 0 in F_q[t], checked one coefficient at a time."""
    F = finite_field(q)
    add, mul = F.add, F.mul
    top = max(len(a) + len(b) - 2 for a, b in zip(x, y))
    for k in range(top + 1):
        acc = 0
        for a, b in zip(x, y):
            if not a or not b:
                continue
            for j in range(max(0, k - len(b) + 1), min(k, len(a) - 1) + 1):
                acc = add[acc][mul[a[j]][b[k - j]]]
        if acc:
            return False
    return True


def _flag_block(args: tuple[int, int, int, int | None, int, int]) -> dict[tuple[int, int], int]:
    q, D1, D2, max_total, start, stop = args
    points = [p for bucket in _points_by_degree(2, q, D1) for p in bucket][start:stop]
    lines = _points_by_degree(2, q, D2)
    counts: dict[tuple[int, int], int] = {}
    for x in points:
        d1 = x.degree
        top = D2 if max_total is None else min(D2, max_total - d1)
        for d2 in range(top + 1):
            hits = sum(1 for y in lines[d2] if _incident(q, x.coords, y.coords))
            counts[(d1, d2)] = counts.get((d1, d2), 0) + hits
    return counts


def enumerate_flag_sl3(
    q: int, D1: int, D2: int, max_total: int | None = None, jobs: int = 1
) -> CountTable:
    """N(d1, d2) = #{incident (x, ℓ) : H(x) = q^{d1}, H(ℓ) = q^{d2}}."""
    _check_box(D1, D2, max_total)
    finite_field(q)
    check_work(3, q, D1)
    check_work(3, q, D2)
    total = sum(len(b) for b in _points_by_degree(2, q, D1))
    logger.info(
        "counting SL_3 flags over F_%d(t) in the box (%d, %d), total <= %s: %d points",
        q, D1, D2, max_total, total,
    )
    parts = max(1, jobs)
    size = -(-total // parts)
    tasks = [(q, D1, D2, max_total, s, min(s + size, total)) for s in range(0, total, size)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            partial = list(pool.map(_flag_block, tasks))
    else:
        partial = [_flag_block(task) for task in tasks]

    counts = {key: 0 for key in _box(D1, D2, max_total)}
    for block in partial:
        for key, value in block.items():
            counts[key] += value
    return CountTable(rank=2, counts=counts, max_degrees=(D1, D2), max_total=max_total)
