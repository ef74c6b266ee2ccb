"""flagzeta: height zeta residues of split flag varieties over F_q(t), computed
exactly on the Tamagawa side and on the Eisenstein side and checked against
point counts."""

from __future__ import annotations

from .errors import (
    FlagZetaError,
    ConfigurationError,
    WorkCapError,
    InsufficientDataError,
    PoleOrderError,
)
from .rational_fn import RatFn, ScaledLimit, fit_rational, s_limit, series_coeffs
from .root_system import (
    RootSystem,
    WeylElt,
    ParabolicDatum,
    build_root_system,
    parse_group,
    parse_parabolic,
    parabolic_datum,
    poincare_polynomial,
    weyl_group,
)
from .curve_zeta import CurveZeta, default_curve, make_curve
from .cone_lq import alpha_star, effective_cone, lq_line
from .eisenstein import c_constant, global_c, theorem_lhs, borel_height_zeta
from .tamagawa import (
    Prediction,
    predict,
    tamagawa_number,
    theta_star,
    truncated_tamagawa,
)
from .types import VARIETIES, VerifyOptions, VerifyReport
from .verify import verify

__all__ = [
    "FlagZetaError",
    "ConfigurationError",
    "WorkCapError",
    "InsufficientDataError",
    "PoleOrderError",
    "RatFn",
    "ScaledLimit",
    "fit_rational",
    "s_limit",
    "series_coeffs",
    "RootSystem",
    "WeylElt",
    "ParabolicDatum",
    "build_root_system",
    "parse_group",
    "parse_parabolic",
    "parabolic_datum",
    "poincare_polynomial",
    "weyl_group",
    "CurveZeta",
    "default_curve",
    "make_curve",
    "alpha_star",
    "effective_cone",
    "lq_line",
    "c_constant",
    "global_c",
    "theorem_lhs",
    "borel_height_zeta",
    "Prediction",
    "predict",
    "tamagawa_number",
    "theta_star",
    "truncated_tamagawa",
    "VARIETIES",
    "VerifyOptions",
    "VerifyReport",
    "verify",
]
