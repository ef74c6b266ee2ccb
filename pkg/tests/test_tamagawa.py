"""Tests for local densities, the Tamagawa number and the residue prediction."""

from __future__ import annotations

from fractions import Fraction

import pytest

from flagzeta.curve_zeta import default_curve, make_curve
from flagzeta.errors import ConfigurationError
from flagzeta.rational_fn import ScaledLimit
from flagzeta.root_system import parse_group, parse_parabolic
from flagzeta.tamagawa import (
    beta,
    convergence_constant,
    local_density,
    local_deviation,
    local_factors,
    local_volume,
    predict,
    tamagawa_number,
    theta_star,
    truncated_tamagawa,
)

CASES = [
    ("A1", ""),
    ("A2", ""),
    ("A2", "2"),
    ("A3", "2,3"),
    ("B2", ""),
    ("B2", "1"),
    ("B2", "2"),
    ("G2", ""),
    ("G2", "2"),
    ("A1xA1", ""),
]


def group(name: str, parabolic: str = ""):
    rs = parse_group(name)
    return rs, parse_parabolic(parabolic, rs)


# ============================================================================
# Local factors
# ============================================================================


class TestLocalFactors:
    @pytest.mark.parametrize(
        "name, parabolic, q_p, value",
        [
            ("A1", "", 2, Fraction(3, 2)),
            ("A2", "2", 2, Fraction(7, 4)),
            ("A2", "", 2, Fraction(21, 8)),
            ("A2", "2", 3, Fraction(13, 9)),
        ],
    )
    def test_density(self, name, parabolic, q_p, value):
        rs, I = group(name, parabolic)
        assert local_density(rs, I, q_p) == value

    def test_volume(self):
        rs, I = group("A2", "2")
        assert local_volume(3, rs, I) == Fraction(13, 9)

    @pytest.mark.parametrize("name, parabolic", CASES)
    @pytest.mark.parametrize("q_p", [2, 3, 4, 8, 9])
    def test_volume_equals_density(self, name, parabolic, q_p):
        rs, I = group(name, parabolic)
        f = local_factors(rs, I, q_p)
        assert f.mu_p == f.d_p

    def test_convergence_factor(self):
        rs, I = group("A2")
        assert local_factors(rs, I, 2).lambda_p == 4

    @pytest.mark.parametrize("name, parabolic", CASES)
    @pytest.mark.parametrize("q_p", [2, 3, 5, 7])
    def test_deviation_is_quadratic_in_one_over_q(self, name, parabolic, q_p):
        rs, I = group(name, parabolic)
        bound = Fraction(convergence_constant(rs, I), q_p**2)
        assert local_deviation(rs, I, q_p) <= bound

    def test_convergence_constant_of_the_sl3_flag(self):
        # (1 - x)^2·(1 + 2x + 2x^2 + x^3) = 1 - x^2 - x^3 + x^5
        rs, I = group("A2")
        assert convergence_constant(rs, I) == 3


# ============================================================================
# τ_H(V) and θ*(V)
# ============================================================================


class TestTamagawaNumber:
    @pytest.mark.parametrize(
        "name, parabolic, q, coeff, logq_pow",
        [
            ("A1", "", 2, Fraction(3, 2), -1),
            ("A1", "", 3, Fraction(4, 3), -1),
            ("A2", "2", 2, Fraction(21, 4), -1),
            ("A2", "", 2, Fraction(63, 8), -2),
            ("A1xA1", "", 2, Fraction(9, 4), -2),
        ],
    )
    def test_closed_form(self, name, parabolic, q, coeff, logq_pow):
        rs, I = group(name, parabolic)
        assert tamagawa_number(default_curve(q), rs, I) == ScaledLimit(coeff, logq_pow)

    @pytest.mark.parametrize("name, parabolic", CASES)
    @pytest.mark.parametrize("q", [2, 3, 4])
    def test_truncation_converges(self, name, parabolic, q):
        rs, I = group(name, parabolic)
        curve = default_curve(q)
        closed = float(tamagawa_number(curve, rs, I).coeff)
        truncated = truncated_tamagawa(curve, rs, I, 12)
        assert abs(truncated.value - closed) / closed < 1e-4

    @pytest.mark.parametrize("name, parabolic", CASES)
    def test_truncation_error_is_within_the_tail_bound(self, name, parabolic):
        rs, I = group(name, parabolic)
        curve = default_curve(2)
        closed = float(tamagawa_number(curve, rs, I).coeff)
        truncated = truncated_tamagawa(curve, rs, I, 8)
        assert truncated.degree == 8
        assert abs(truncated.value - closed) <= truncated.tail

    def test_genus_one_truncation(self):
        rs, I = group("A2", "2")
        curve = make_curve(2, 1, (1, -1, 2))
        closed = float(tamagawa_number(curve, rs, I).coeff)
        truncated = truncated_tamagawa(curve, rs, I, 12)
        assert abs(truncated.value - closed) <= truncated.tail

    def test_rejects_shallow_truncation(self):
        rs, I = group("A1")
        with pytest.raises(ConfigurationError, match=">= 3"):
            truncated_tamagawa(default_curve(2), rs, I, 2)

    def test_rejects_the_point(self):
        rs, _ = group("A1")
        with pytest.raises(ConfigurationError, match="point"):
            tamagawa_number(default_curve(2), rs, {0})


class TestThetaStar:
    @pytest.mark.parametrize(
        "name, parabolic, q, coeff, logq_pow",
        [
            ("A1", "", 2, Fraction(3, 4), -1),
            ("A1", "", 5, Fraction(12, 5), -1),
            ("A2", "2", 2, Fraction(7, 4), -1),
            ("A2", "", 2, Fraction(63, 32), -2),
            ("A1xA1", "", 2, Fraction(9, 16), -2),
        ],
    )
    def test_values(self, name, parabolic, q, coeff, logq_pow):
        rs, I = group(name, parabolic)
        assert theta_star(default_curve(q), rs, I) == ScaledLimit(coeff, logq_pow)

    @pytest.mark.parametrize("name, parabolic", CASES)
    def test_positive_with_pole_order_t(self, name, parabolic):
        rs, I = group(name, parabolic)
        value = theta_star(default_curve(3), rs, I)
        assert value.coeff > 0
        assert value.logq_pow == -(rs.rank - len(I))

    def test_beta_is_trivial(self):
        rs, I = group("B2", "1")
        assert beta(rs, I) == 1


class TestPredict:
    @pytest.mark.parametrize("name, parabolic", CASES)
    @pytest.mark.parametrize("q", [2, 3, 4])
    def test_identity_holds(self, name, parabolic, q):
        rs, I = group(name, parabolic)
        prediction = predict(default_curve(q), rs, I)
        assert prediction.identity_holds
        assert prediction.theta_star == prediction.tau * prediction.alpha_star
        assert prediction.truncated_tau is None

    @pytest.mark.parametrize("name, parabolic", [("A1", ""), ("A2", "2"), ("A2", ""), ("B2", "")])
    def test_identity_holds_in_genus_one(self, name, parabolic):
        rs, I = group(name, parabolic)
        assert predict(make_curve(2, 1, (1, -1, 2)), rs, I).identity_holds

    def test_truncated_tau(self):
        rs, I = group("A1")
        prediction = predict(default_curve(2), rs, I, truncate=12)
        assert prediction.truncated_tau is not None
        assert prediction.truncated_tau.degree == 12
        assert prediction.truncated_tau.value == pytest.approx(1.5, rel=1e-4)
        assert prediction.alpha_star == Fraction(1, 2)
        assert prediction.beta == 1
