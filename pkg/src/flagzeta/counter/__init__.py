from __future__ import annotations

from .types import (
    Poly,
    Strategy,
    ProjPoint,
    CountTable,
    EmpiricalResidue,
)
from .field import FiniteField, finite_field, factor_degrees, is_coprime, poly_gcd
from .projective import enumerate_projective, iter_points
from .products import enumerate_flag_sl3, enumerate_p1xp1, scan_p1xp1
from .residue import (
    empirical_residue,
    growth_constant,
    height_by_places,
    shell_coefficients,
    table_to_csv,
    table_to_json,
)

__all__ = [
    "Poly",
    "Strategy",
    "ProjPoint",
    "CountTable",
    "EmpiricalResidue",
    "FiniteField",
    "finite_field",
    "factor_degrees",
    "is_coprime",
    "poly_gcd",
    "enumerate_projective",
    "iter_points",
    "enumerate_flag_sl3",
    "enumerate_p1xp1",
    "scan_p1xp1",
    "empirical_residue",
    "growth_constant",
    "height_by_places",
    "shell_coefficients",
    "table_to_csv",
    "table_to_json",
]
