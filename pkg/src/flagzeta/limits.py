from __future__ import annotations

import math
import os

from .errors import ConfigurationError, WorkCapError

# ============================================================================
# Size caps
# ============================================================================

MAX_TOTAL_RANK = 6

MAX_WEYL_ORDER = 100_000

# Largest residue degree for which place counts are tabulated.
MAX_PLACE_DEGREE = 30

# Bound on <y, a> in the brute-force dual-cone lattice sum.
MAX_LATTICE_CAP = 40

# Enumeration work is measured as (n+1)(D+1)·log2(q) bits per factor.
DEFAULT_WORK_CAP_BITS = 36.0

WORK_CAP_ENV = "FLAGZETA_WORKCAP"

# Below this many raw tuples the counter scans every tuple instead of sieving.
SCAN_THRESHOLD = 1 << 18

# ============================================================================
# Defaults & verification thresholds
# ============================================================================

DEFAULT_TRUNCATION_DEGREE = 12

MIN_TRUNCATION_DEGREE = 3

TRUNCATION_TOLERANCE = 1e-4

EMPIRICAL_TOLERANCE = {
    "projective": 0.10,
    "flag": 0.25,
}


def work_cap_bits() -> float:
    """Enumeration cap in bits, overridable through FLAGZETA_WORKCAP (expert only)."""
    raw = os.environ.get(WORK_CAP_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_WORK_CAP_BITS
    try:
        value = float(raw)
    except ValueError as err:
        raise ConfigurationError(
            f'{WORK_CAP_ENV} must be a number of bits, got "{raw}"'
        ) from err
    if value <= 0:
        raise ConfigurationError(f"{WORK_CAP_ENV} must be positive, got {value}")
    return value


def check_work(coords: int, q: int, max_degree: int) -> None:
    """Reject a scan over `coords` polynomials of degree <= max_degree over F_q
    whose work exceeds the cap."""
    bits = coords * (max_degree + 1) * math.log2(q)
    cap = work_cap_bits()
    if bits > cap:
        raise WorkCapError(
            f"enumeration of {coords} coordinates of degree <= {max_degree} over "
            f"F_{q} needs {bits:.1f} bits of work, cap is {cap:g}"
        )
