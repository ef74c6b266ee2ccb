"""Tests for F_q arithmetic, point counting and the empirical residue."""

from __future__ import annotations

import functools
import random
from fractions import Fraction

import pytest

from flagzeta.counter import (
    CountTable,
    empirical_residue,
    enumerate_flag_sl3,
    enumerate_p1xp1,
    enumerate_projective,
    factor_degrees,
    finite_field,
    growth_constant,
    height_by_places,
    is_coprime,
    iter_points,
    poly_gcd,
    scan_p1xp1,
    shell_coefficients,
    table_to_csv,
    table_to_json,
)
from flagzeta.counter.field import poly_add, poly_divmod, poly_mul
from flagzeta.curve_zeta import default_curve
from flagzeta.eisenstein import borel_height_zeta
from flagzeta.errors import ConfigurationError, InsufficientDataError, WorkCapError
from flagzeta.limits import WORK_CAP_ENV
from flagzeta.rational_fn import ScaledLimit, series_coeffs
from flagzeta.root_system import parabolic_datum, parse_group, parse_parabolic
from flagzeta.tamagawa import theta_star


def datum(group: str, parabolic: str = ""):
    rs = parse_group(group)
    return parabolic_datum(rs, parse_parabolic(parabolic, rs))


def projective_closed_form(n: int, q: int, d: int) -> int:
    points = (q ** (n + 1) - 1) // (q - 1)
    if d == 0:
        return points
    return points * q ** ((n + 1) * (d - 1)) * (q ** (n + 1) - q)


@functools.cache
def flag_table(max_total: int) -> CountTable:
    return enumerate_flag_sl3(2, max_total, max_total, max_total=max_total)


# ============================================================================
# F_q and F_q[t]
# ============================================================================


class TestFiniteField:
    def test_prime_field(self):
        F = finite_field(5)
        assert F.mul[2][3] == 1
        assert F.inv[2] == 3
        assert F.neg[2] == 3

    def test_field_with_four_elements(self):
        # F_4 = F_2[z]/(z^2 + z + 1), with 2 = z and 3 = z + 1
        F = finite_field(4)
        assert F.modulus == (1, 1, 1)
        assert F.mul[2][2] == 3
        assert F.add[2][3] == 1
        assert F.inv[2] == 3

    @pytest.mark.parametrize("q", [4, 8, 9])
    def test_every_nonzero_element_is_invertible(self, q):
        F = finite_field(q)
        assert all(F.mul[a][F.inv[a]] == 1 for a in range(1, q))
        assert all(F.add[a][F.neg[a]] == 0 for a in range(q))

    def test_rejects_non_prime_power(self):
        with pytest.raises(ConfigurationError, match="not a prime power"):
            finite_field(6)


class TestPolynomials:
    def test_gcd_is_monic(self):
        F = finite_field(2)
        # t^2 + 1 = (t + 1)^2 over F_2
        assert poly_gcd(F, (1, 0, 1), (1, 1)) == (1, 1)
        assert poly_gcd(F, (1, 1, 1), (0, 1)) == (1,)

    def test_gcd_over_f3(self):
        F = finite_field(3)
        # (t - 1)(t + 1) and 2(t + 1)
        assert poly_gcd(F, (2, 0, 1), (2, 2)) == (1, 1)

    def test_divmod(self):
        F = finite_field(3)
        a, b = (1, 2, 0, 1), (2, 1)
        quo, rem = poly_divmod(F, a, b)
        assert len(rem) < len(b)
        assert poly_add(F, poly_mul(F, quo, b), rem) == a

    def test_coprimality(self):
        F = finite_field(2)
        assert is_coprime(F, [(0, 1), (1, 1)])
        assert not is_coprime(F, [(0, 1), (0, 0, 1), ()])

    def test_irreducible_counts(self):
        degrees, irreducibles = factor_degrees(2, 4)
        by_degree = [sum(1 for f in irreducibles if len(f) - 1 == d) for d in range(1, 5)]
        assert by_degree == [2, 1, 2, 3]
        # t^2 + t = t(t + 1)
        assert degrees[(0, 1, 1)] == (1, 1)
        assert degrees[(1, 1, 1)] == (2,)


# ============================================================================
# Projective spaces
# ============================================================================


class TestProjective:
    def test_projective_line_over_f2(self):
        table = enumerate_projective(1, 2, 3)
        assert [table[(d,)] for d in range(4)] == [3, 6, 24, 96]

    def test_small_fields(self):
        assert enumerate_projective(2, 2, 0)[(0,)] == 7
        assert enumerate_projective(1, 3, 0)[(0,)] == 4

    @pytest.mark.parametrize(
        "n, q, max_degree",
        [(1, 2, 5), (1, 3, 3), (1, 4, 2), (2, 2, 2), (2, 3, 1), (3, 2, 1)],
    )
    def test_scan_and_sieve_agree(self, n, q, max_degree):
        scan = enumerate_projective(n, q, max_degree, strategy="scan")
        sieve = enumerate_projective(n, q, max_degree, strategy="sieve")
        assert scan.counts == sieve.counts

    @pytest.mark.parametrize(
        "n, q, max_degree", [(1, 2, 10), (1, 3, 6), (1, 5, 4), (2, 2, 4), (3, 2, 3), (4, 2, 2)]
    )
    def test_closed_form(self, n, q, max_degree):
        table = enumerate_projective(n, q, max_degree)
        for d in range(max_degree + 1):
            assert table[(d,)] == projective_closed_form(n, q, d)

    def test_points_are_canonical_and_distinct(self):
        F = finite_field(2)
        points = list(iter_points(1, 2, 2))
        assert len(points) == 3 + 6 + 24
        assert len({p.coords for p in points}) == len(points)
        for p in points:
            lead = next(c for c in p.coords if c)
            assert lead[-1] == 1
            assert is_coprime(F, p.coords)

    @pytest.mark.parametrize("n, q", [(1, 2), (2, 2), (1, 3)])
    def test_growth_constant_is_the_number_of_rational_points(self, n, q):
        table = enumerate_projective(n, q, 4 if n == 1 else 3)
        assert growth_constant(table, n, q) == (q ** (n + 1) - 1) // (q - 1)

    def test_work_cap(self):
        with pytest.raises(WorkCapError, match="cap is 36"):
            enumerate_projective(1, 2, 20)

    def test_work_cap_from_environment(self, monkeypatch):
        monkeypatch.setenv(WORK_CAP_ENV, "10")
        with pytest.raises(WorkCapError, match="cap is 10"):
            enumerate_projective(1, 2, 5)
        monkeypatch.setenv(WORK_CAP_ENV, "many")
        with pytest.raises(ConfigurationError, match="number of bits"):
            enumerate_projective(1, 2, 1)

    def test_rejects_bad_input(self):
        with pytest.raises(ConfigurationError, match="projective dimension"):
            enumerate_projective(0, 2, 3)
        with pytest.raises(ConfigurationError, match="strategy"):
            enumerate_projective(1, 2, 3, strategy="guess")  # type: ignore[arg-type]

    def test_counts_do_not_depend_on_jobs(self):
        serial = enumerate_projective(1, 2, 8, strategy="sieve", jobs=1)
        parallel = enumerate_projective(1, 2, 8, strategy="sieve", jobs=3)
        assert serial.counts == parallel.counts
        scan = enumerate_projective(2, 2, 2, strategy="scan", jobs=2)
        assert scan.counts == enumerate_projective(2, 2, 2, strategy="scan").counts


# ============================================================================
# Products and flags
# ============================================================================


class TestProducts:
    def test_p1xp1(self):
        table = enumerate_p1xp1(2, 3, 3, max_total=3)
        assert table[(0, 0)] == 9
        assert table[(1, 0)] == 18
        assert table[(1, 2)] == 6 * 24
        assert table[(2, 2)] == 0
        assert not table.in_box((2, 2))

    def test_p1xp1_matches_direct_scan(self):
        assert enumerate_p1xp1(2, 2, 3).counts == scan_p1xp1(2, 2, 3).counts

    def test_flag_counts(self):
        table = flag_table(3)
        expected = {
            (0, 0): 21,
            (1, 0): 42,
            (2, 0): 168,
            (1, 1): 168,
            (3, 0): 672,
            (2, 1): 504,
        }
        for (d1, d2), count in expected.items():
            assert table[(d1, d2)] == count
            assert table[(d2, d1)] == count

    def test_flag_shells_match_the_borel_height_zeta(self):
        pd = datum("A2")
        coeffs = shell_coefficients(flag_table(3), pd, 2)
        assert len(coeffs) == 8
        expected = series_coeffs(borel_height_zeta(default_curve(2), pd.root_system), 7)
        assert coeffs == expected

    def test_flag_counts_do_not_depend_on_jobs(self):
        serial = enumerate_flag_sl3(2, 2, 2, max_total=2)
        parallel = enumerate_flag_sl3(2, 2, 2, max_total=2, jobs=2)
        assert serial.counts == parallel.counts

    def test_rejects_negative_box(self):
        with pytest.raises(ConfigurationError, match="max degrees"):
            enumerate_flag_sl3(2, -1, 2)


# ============================================================================
# Heights
# ============================================================================


class TestHeights:
    def test_canonical_points_have_height_q_to_the_degree(self):
        F = finite_field(2)
        _, irreducibles = factor_degrees(2, 6)
        points = list(iter_points(2, 2, 2))
        for p in random.Random(0).sample(points, 20):
            assert height_by_places(p, F, irreducibles) == Fraction(2) ** p.degree

    def test_height_is_invariant_under_scaling(self):
        F = finite_field(3)
        _, irreducibles = factor_degrees(3, 4)
        points = list(iter_points(1, 3, 2))
        rng = random.Random(1)
        for p in rng.sample(points, 10):
            g = (rng.randrange(3), rng.randrange(3), 1)
            scaled = tuple(poly_mul(F, c, g) for c in p.coords)
            assert height_by_places(scaled, F, irreducibles) == Fraction(3) ** p.degree

    def test_common_factor_cancels(self):
        F = finite_field(2)
        _, irreducibles = factor_degrees(2, 2)
        # (t : t) = (1 : 1)
        assert height_by_places(((0, 1), (0, 1)), F, irreducibles) == 1

    def test_rejects_zero_tuple(self):
        F = finite_field(2)
        with pytest.raises(ConfigurationError, match="zero tuple"):
            height_by_places(((), ()), F, ())


# ============================================================================
# Empirical residue
# ============================================================================


class TestEmpiricalResidue:
    @pytest.mark.parametrize("q, max_degree", [(2, 10), (3, 8), (4, 6), (5, 6)])
    def test_projective_line_is_exact(self, q, max_degree):
        pd = datum("A1")
        residue = empirical_residue(enumerate_projective(1, q, max_degree), pd, q)
        expected = ScaledLimit(Fraction(q * q - 1, 2 * q), -1)
        assert residue.exact == expected
        assert residue.estimate == pytest.approx(float(expected.coeff))

    def test_projective_plane_is_exact(self):
        pd = datum("A2", "2")
        residue = empirical_residue(enumerate_projective(2, 2, 4), pd, 2)
        assert residue.exact == ScaledLimit(Fraction(7, 4), -1)
        assert residue.coefficients[:4] == [7, 0, 0, Fraction(21, 4)]

    def test_flag_variety_estimate(self):
        pd = datum("A2")
        residue = empirical_residue(flag_table(4), pd, 2)
        target = Fraction(63, 32)
        if residue.exact is not None:
            assert residue.exact == ScaledLimit(target, -2)
        assert abs(residue.estimate - float(target)) / float(target) <= 0.25

    @pytest.mark.parametrize(
        "n, parabolic, max_degree, corrupted",
        [(1, "", 10, 9), (4, "2,3,4", 2, 2)],
    )
    def test_corrupted_counts_have_no_exact_fit(self, n, parabolic, max_degree, corrupted):
        table = enumerate_projective(n, 2, max_degree)
        counts = dict(table.counts)
        counts[(corrupted,)] += 12345
        bad = CountTable(table.rank, counts, table.max_degrees)
        assert empirical_residue(bad, datum(f"A{n}", parabolic), 2).exact is None

    def test_sparse_shells_fall_back_to_the_estimate(self):
        # weights of P^4 are multiples of 5: three usable shells leave nothing to check
        rs = parse_group("A4")
        I = parse_parabolic("2,3,4", rs)
        residue = empirical_residue(enumerate_projective(4, 2, 2), parabolic_datum(rs, I), 2)
        assert residue.exact is None
        expected = theta_star(default_curve(2), rs, I)
        assert residue.estimate == pytest.approx(float(expected.coeff))

    def test_rejects_too_few_shells(self):
        with pytest.raises(InsufficientDataError, match="too few"):
            empirical_residue(enumerate_projective(1, 2, 0), datum("A1"), 2)

    def test_rejects_counts_outside_the_box(self):
        table = enumerate_projective(1, 2, 3)
        counts = {**table.counts, (5,): 1}
        with pytest.raises(ConfigurationError, match="outside"):
            shell_coefficients(CountTable(1, counts, table.max_degrees), datum("A1"), 2)

    def test_rejects_mismatched_rank(self):
        with pytest.raises(ConfigurationError, match="Picard rank"):
            shell_coefficients(enumerate_projective(1, 2, 3), datum("A2"), 2)


# ============================================================================
# Export
# ============================================================================


class TestExport:
    def test_csv(self):
        assert table_to_csv(enumerate_projective(1, 2, 2)) == "d1,count\n0,3\n1,6\n2,24\n"

    def test_csv_for_two_gradings(self):
        text = table_to_csv(enumerate_p1xp1(2, 1, 1))
        assert text.splitlines() == ["d1,d2,count", "0,0,9", "0,1,18", "1,0,18", "1,1,36"]

    def test_json(self):
        data = table_to_json(enumerate_projective(1, 2, 1))
        assert data == {
            "rank": 1,
            "max_degrees": [1],
            "max_total": None,
            "counts": [{"degrees": [0], "count": 3}, {"degrees": [1], "count": 6}],
        }
