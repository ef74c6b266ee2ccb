"""Tests for local and global c-functions, the constants C_P and the
Eisenstein-side residue."""

from __future__ import annotations

from fractions import Fraction

import pytest

from flagzeta.curve_zeta import default_curve, make_curve
from flagzeta.eisenstein import (
    act,
    borel_height_zeta,
    c_constant,
    global_c,
    line,
    local_c,
    residue_function,
    residue_pole_order,
    rho_line,
    theorem_lhs,
)
from flagzeta.errors import ConfigurationError
from flagzeta.rational_fn import RatFn, ScaledLimit, s_limit, series_coeffs
from flagzeta.root_system import (
    identity,
    longest_element,
    multiply,
    parabolic_datum,
    parse_group,
    parse_parabolic,
    simple_reflection,
    weyl_group,
)
from flagzeta.tamagawa import theta_star

CASES = [
    ("A1", ""),
    ("A2", ""),
    ("A2", "2"),
    ("A3", "2,3"),
    ("B2", ""),
    ("B2", "1"),
    ("B2", "2"),
    ("G2", ""),
    ("G2", "1"),
    ("A1xA1", ""),
]


def group(name: str, parabolic: str = ""):
    rs = parse_group(name)
    return rs, parse_parabolic(parabolic, rs)


# ============================================================================
# Local c-functions
# ============================================================================


class TestLocalC:
    @pytest.mark.parametrize(
        "name, q_p, value",
        [
            ("A1", 2, Fraction(3, 2)),
            ("A2", 2, Fraction(21, 8)),
            ("G2", 2, Fraction(189, 64)),
            ("A1", 3, Fraction(4, 3)),
        ],
    )
    def test_longest_element_at_rho(self, name, q_p, value):
        rs, _ = group(name)
        w0 = longest_element(rs, frozenset(range(rs.rank)))
        assert local_c(rs, w0, rho_line(rs, rs.rho), q_p)(1) == value

    def test_identity_is_one(self):
        rs, _ = group("B2")
        assert local_c(rs, identity(rs), rho_line(rs, rs.rho), 5) == 1

    def test_rejects_identically_zero_exponent(self):
        rs, _ = group("A1")
        with pytest.raises(ConfigurationError, match="identically 0"):
            local_c(rs, simple_reflection(rs, 0), line(rs, (0,), (0,)), 2)


# ============================================================================
# Global c-functions
# ============================================================================


class TestGlobalC:
    def test_constant_line(self):
        # q·ζ(2)/ζ(3) = 2·(8/3)/(32/21)
        rs, _ = group("A1")
        f = global_c(default_curve(2), rs, simple_reflection(rs, 0), line(rs, (2,), (0,)))
        assert f == Fraction(7, 2)

    def test_rejects_constant_exponent_at_the_pole(self):
        rs, _ = group("A1")
        with pytest.raises(ConfigurationError, match="pole"):
            global_c(default_curve(2), rs, simple_reflection(rs, 0), line(rs, (1,), (0,)))

    def test_rejects_mismatched_rank(self):
        rs, _ = group("A2")
        with pytest.raises(ConfigurationError, match="rank 2"):
            line(rs, (1,), (1,))

    @pytest.mark.parametrize("name", ["A2", "B2"])
    @pytest.mark.parametrize("direction", [(1, 1), (1, 2)])
    def test_cocycle_law(self, name, direction):
        rs, _ = group(name)
        curve = default_curve(3)
        wl = rho_line(rs, direction)
        for w1 in weyl_group(rs):
            for w2 in weyl_group(rs):
                w = multiply(rs, w1, w2)
                if w.length != w1.length + w2.length:
                    continue
                lhs = global_c(curve, rs, w, wl)
                rhs = global_c(curve, rs, w1, act(rs, w2, wl)) * global_c(curve, rs, w2, wl)
                assert lhs == rhs

    def test_identity_is_one(self):
        rs, _ = group("G2")
        assert global_c(default_curve(2), rs, identity(rs), rho_line(rs, rs.rho)) == 1


# ============================================================================
# C_P and the residue identity
# ============================================================================


class TestCConstant:
    def test_borel_constant_is_one(self):
        rs, _ = group("A2")
        assert c_constant(default_curve(2), rs, frozenset(), rs.rho) == ScaledLimit.rational(1)

    def test_rank_one(self):
        rs, _ = group("A1")
        assert c_constant(default_curve(2), rs, {0}, rs.rho) == ScaledLimit(Fraction(3, 2), -1)

    @pytest.mark.parametrize("name, parabolic", CASES)
    def test_independent_of_generic_direction(self, name, parabolic):
        rs, I = group(name, parabolic)
        curve = default_curve(2)
        other = tuple(k + 1 for k in range(rs.rank))
        for J in (frozenset(range(rs.rank)), I):
            reference = c_constant(curve, rs, J, rs.rho)
            assert c_constant(curve, rs, J, other) == reference
            assert c_constant(curve, rs, J, tuple(2 * c for c in rs.rho)) == reference

    def test_rejects_non_generic_direction(self):
        rs, _ = group("A2")
        with pytest.raises(ConfigurationError, match="not generic"):
            c_constant(default_curve(2), rs, {0, 1}, (1, 0))


class TestTheoremLhs:
    @pytest.mark.parametrize("q", [2, 3, 4, 5])
    def test_projective_line(self, q):
        rs, I = group("A1")
        expected = ScaledLimit(Fraction(q * q - 1, 2 * q), -1)
        assert theorem_lhs(default_curve(q), rs, I) == expected

    @pytest.mark.parametrize("name, parabolic", CASES)
    @pytest.mark.parametrize("q", [2, 3])
    def test_equals_theta_star(self, name, parabolic, q):
        rs, I = group(name, parabolic)
        curve = default_curve(q)
        assert theorem_lhs(curve, rs, I) == theta_star(curve, rs, I)

    def test_rejects_the_point(self):
        rs, _ = group("A2")
        with pytest.raises(ConfigurationError, match="point"):
            theorem_lhs(default_curve(2), rs, {0, 1})


class TestResidueFunction:
    @pytest.mark.parametrize("name, parabolic", CASES)
    def test_pole_order_is_picard_rank(self, name, parabolic):
        rs, I = group(name, parabolic)
        assert residue_pole_order(default_curve(2), rs, I) == parabolic_datum(rs, I).t

    def test_genus_one_pole_order(self):
        rs, I = group("A2", "2")
        curve = make_curve(2, 1, (1, -1, 2))
        assert residue_pole_order(curve, rs, I) == 1

    def test_borel_residue_function_is_the_longest_c(self):
        rs, I = group("A2")
        curve = default_curve(2)
        w0 = longest_element(rs, frozenset({0, 1}))
        assert residue_function(curve, rs, I) == global_c(curve, rs, w0, rho_line(rs, rs.rho))


class TestBorelHeightZeta:
    def test_series_of_the_sl3_flag_variety(self):
        rs, _ = group("A2")
        f = borel_height_zeta(default_curve(2), rs)
        assert series_coeffs(f, 4) == [21, 0, 21, 0, Fraction(63, 2)]

    def test_projective_line(self):
        # 3 + (3/2)·x^2 / (1 - x^2): N(0) = 3 and N(d) = 6·4^{d-1}
        rs, _ = group("A1")
        f = borel_height_zeta(default_curve(2), rs)
        expected = RatFn.constant(3) + RatFn.from_coeffs([0, 0, Fraction(3, 2)], [1, 0, -1])
        assert f == expected

    @pytest.mark.parametrize("name", ["A1", "A2", "B2", "G2"])
    def test_leading_pole_is_theta_star(self, name):
        rs, _ = group(name)
        curve = default_curve(2)
        f = borel_height_zeta(curve, rs)
        assert s_limit(f, rs.rank, curve.q) == theta_star(curve, rs, frozenset())
