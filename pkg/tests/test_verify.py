import math

import pytest

from hyperzero.family import FamilyParams
from hyperzero.verify import (
    CountMismatch,
    NumericUnderflow,
    check_hyperbolicity,
    check_sign_pattern,
    cross_check_roots,
    density_scan,
    expsum_sign,
)


class TestHyperbolicity:
    def test_hand_checked_2_1(self):
        # P_2 = 3 - 4z + z**2 has roots 1 and 3, inside (0, 4)
        report = check_hyperbolicity(FamilyParams(2, 1), 2)
        row = report.per_m[2]
        assert row.degree == 2
        assert row.real_roots_in_I == 2
        assert row.total_real_roots == 2
        assert row.hyperbolic and row.containment
        assert report.first_all_pass_m == 0

    def test_hand_checked_1_2(self):
        # P_4 = 1 - 3z + z**2: roots (3 +- sqrt 5)/2, both above 1/4
        report = check_hyperbolicity(FamilyParams(1, 2), 4)
        row = report.per_m[4]
        assert row.degree == 2
        assert row.real_roots_in_I == 2
        assert row.hyperbolic and row.containment

    def test_constant_members_trivially_pass(self):
        report = check_hyperbolicity(FamilyParams(2, 3), 2)
        for m in range(3):
            row = report.per_m[m]
            assert row.degree == 0
            assert row.hyperbolic and row.containment

    def test_flag_definitions_hold(self):
        report = check_hyperbolicity(FamilyParams(3, 2), 30)
        for row in report.per_m:
            assert row.hyperbolic == (row.real_roots_in_I == row.degree)
            if row.containment:
                assert row.total_real_roots == row.real_roots_in_I

    def test_parallel_jobs_match_sequential(self):
        seq = check_hyperbolicity(FamilyParams(2, 3), 18)
        par = check_hyperbolicity(FamilyParams(2, 3), 18, jobs=2)
        assert seq.per_m == par.per_m
        assert seq.first_all_pass_m == par.first_all_pass_m

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            check_hyperbolicity(FamilyParams(2, 1), -1)


class TestSignPattern:
    @pytest.mark.parametrize("n,r,m", [(3, 2, 100), (4, 3, 60), (2, 3, 40)])
    def test_alternation_matches(self, n, r, m):
        pattern = check_sign_pattern(FamilyParams(n, r), m)
        assert pattern.matches_prediction
        assert pattern.signs == tuple((-1) ** h for h in range(1, m // r + 1))
        assert pattern.terminal_sign == (-1) ** (m // r + 1)

    def test_single_probe_case(self):
        # m = r: one grid angle with sign -1, terminal sign +1
        pattern = check_sign_pattern(FamilyParams(3, 2), 2)
        assert pattern.signs == (-1,)
        assert pattern.terminal_sign == 1
        assert pattern.matches_prediction

    def test_requires_probe_grid(self):
        with pytest.raises(ValueError):
            check_sign_pattern(FamilyParams(3, 2), 1)


class TestCrossCheck:
    def test_cubic_family(self):
        result = cross_check_roots(FamilyParams(3, 1), 10)
        assert result.passed
        assert result.n_roots == 10
        assert result.max_residual < 1e-6

    def test_square_family(self):
        result = cross_check_roots(FamilyParams(2, 2), 7)
        assert result.passed
        assert result.n_roots == 3

    def test_constant_member(self):
        result = cross_check_roots(FamilyParams(3, 2), 1)
        assert result.passed
        assert result.n_roots == 0

    def test_count_mismatch_carries_counts(self):
        err = CountMismatch(3, 5)
        assert err.theta_count == 3
        assert err.sturm_count == 5
        assert isinstance(err, ArithmeticError)


class TestDensity:
    def test_single_bin_covered(self):
        report = density_scan(FamilyParams(3, 2), 4, 1)
        assert report.coverage_fraction == 1.0

    def test_no_members_no_coverage(self):
        report = density_scan(FamilyParams(3, 2), 0, 10)
        assert report.coverage_fraction == 0.0
        assert report.covered == 0

    def test_monotone_in_m_max(self):
        params = FamilyParams(3, 2)
        c20 = density_scan(params, 20, 12).coverage_fraction
        c40 = density_scan(params, 40, 12).coverage_fraction
        assert c40 >= c20

    def test_monotone_in_bin_refinement(self):
        params = FamilyParams(3, 2)
        coarse = density_scan(params, 30, 8).coverage_fraction
        fine = density_scan(params, 30, 64).coverage_fraction
        assert coarse >= fine  # coarser bins are easier to cover

    def test_guards(self):
        with pytest.raises(ValueError):
            density_scan(FamilyParams(3, 2), 10, 0)
        with pytest.raises(ValueError):
            density_scan(FamilyParams(3, 2), -1, 5)


class TestExpsum:
    def test_degenerate_two_term_case(self):
        # the n = 2 sum vanishes identically; the dominant-pair convention
        # 2 (-1)**h cos(pi/n) fixes the sign
        for h in (1, 2, 3, 9):
            assert expsum_sign(2, h) == (-1) ** h

    def test_small_cases_match_direct_evaluation(self):
        assert expsum_sign(5, 1) == -1
        assert expsum_sign(5, 2) == 1

    def test_boundary_of_hand_checked_range(self):
        assert expsum_sign(85, 1) == -1

    def test_alternation_sample(self):
        for n in (3, 7, 20, 60, 101, 120):
            for h in (1, 2, 5, 40):
                assert expsum_sign(n, h) == (-1) ** h

    def test_guards(self):
        with pytest.raises(ValueError):
            expsum_sign(1, 1)
        with pytest.raises(ValueError):
            expsum_sign(4, 0)
