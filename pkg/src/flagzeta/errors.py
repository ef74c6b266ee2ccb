from __future__ import annotations

# ============================================================================
# Exceptions: all derive from ValueError so callers can catch bad input
# uniformly; the CLI maps FlagZetaError to exit status 2.
# ============================================================================


class FlagZetaError(ValueError):
    """Base class for every error raised by flagzeta."""


class ConfigurationError(FlagZetaError):
    """Unsupported or inconsistent input data (group, parabolic, curve, line)."""


class WorkCapError(FlagZetaError):
    """A size cap (Weyl group, place degree, lattice sum, enumeration) was exceeded."""


class InsufficientDataError(FlagZetaError):
    """Too few coefficients or table entries for the requested computation."""


class PoleOrderError(FlagZetaError):
    """A limit was requested with fewer (s-1) factors than the pole order."""
