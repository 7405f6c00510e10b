import cmath
import math
import random

import pytest

from hyperzero._aberth import horner
from hyperzero.curve import double_zero_theta, z_of_theta
from hyperzero.family import FamilyParams
from hyperzero.qspec import (
    CircleClassificationAmbiguous,
    WrongDegree,
    build_q,
    eval_R,
    eval_R_cubic,
    find_R_roots,
    sign_grid,
    solve_q,
)

CUBIC_FAMILIES = [(3, 1), (3, 2), (1, 3), (2, 3)]


class TestBuildQ:
    def test_square_family_at_pi_over_4(self):
        # c0 = sqrt(2), c1 = 1: (sqrt2 - z)**2 + z**2 = 2 - 2 sqrt2 z + 2 z**2
        coeffs = build_q(FamilyParams(2, 2), math.pi / 4)
        assert coeffs == pytest.approx([2.0, -2.0 * math.sqrt(2), 2.0])

    def test_linear_numerator_family(self):
        # n=1: phi = 3 theta; at pi/6: c0 = sqrt(3), c1 = 2
        coeffs = build_q(FamilyParams(1, 3), math.pi / 6)
        assert coeffs == pytest.approx([math.sqrt(3), -2.0, 0.0, 1.0])

    @pytest.mark.parametrize("n,r", [(2, 2), (3, 2), (2, 3), (5, 4)])
    def test_constant_term_positive(self, n, r):
        rng = random.Random(n * 10 + r)
        for _ in range(20):
            theta = rng.uniform(1e-3, math.pi / r - 1e-3)
            assert build_q(FamilyParams(n, r), theta)[0] > 0

    def test_degree_is_max(self):
        assert len(build_q(FamilyParams(2, 5), 0.3)) == 6
        assert len(build_q(FamilyParams(5, 2), 0.3)) == 6

    def test_trivial_pair_annihilates(self):
        for n, r in [(3, 2), (2, 3), (4, 1), (1, 4), (5, 5)]:
            theta = 0.4 * math.pi / r
            coeffs = build_q(FamilyParams(n, r), theta)
            scale = max(abs(c) for c in coeffs)
            for z in (cmath.exp(1j * theta), cmath.exp(-1j * theta)):
                assert abs(horner(coeffs, z)) < 1e-12 * scale


class TestSolveQ:
    def test_square_family_roots(self):
        spec = solve_q(FamilyParams(2, 2), math.pi / 4)
        assert len(spec.roots) == 2
        assert spec.roots[0] == pytest.approx(cmath.exp(-1j * math.pi / 4))
        assert spec.roots[1] == pytest.approx(cmath.exp(1j * math.pi / 4))
        assert spec.margin is None
        assert spec.double_root_pair is None

    @pytest.mark.parametrize("n,r", [(3, 1), (1, 3), (4, 3), (5, 2), (5, 5)])
    def test_boundary_pair_convention(self, n, r):
        theta = 0.37 * math.pi / r
        spec = solve_q(FamilyParams(n, r), theta)
        assert spec.on_circle_indices == (0, 1)
        assert spec.roots[0] == pytest.approx(cmath.exp(-1j * theta))
        assert spec.roots[1] == pytest.approx(cmath.exp(1j * theta))

    def test_random_sweep_two_on_circle_rest_outside(self):
        rng = random.Random(987)
        for _ in range(150):
            n, r = rng.randint(1, 8), rng.randint(1, 8)
            if max(n, r) < 2:
                n = 2
            theta = rng.uniform(1e-4, math.pi / r * (1 - 1e-4))
            spec = solve_q(FamilyParams(n, r), theta)
            assert len(spec.roots) == max(n, r)
            assert len(spec.on_circle_indices) == 2
            if spec.margin is not None:
                assert spec.margin > 0

    @pytest.mark.parametrize("n,r", [(3, 2), (4, 3), (2, 3), (6, 4)])
    def test_root_reconstruction(self, n, r):
        rng = random.Random(n + 8 * r)
        params = FamilyParams(n, r)
        for _ in range(10):
            theta = rng.uniform(0.05, math.pi / r - 0.05)
            coeffs = build_q(params, theta)
            spec = solve_q(params, theta)
            prod = [coeffs[-1]]
            for z in spec.roots:
                prod = [0] + prod
                for i in range(len(prod) - 1):
                    prod[i] = prod[i] - prod[i + 1] * z
            scale = max(abs(c) for c in coeffs)
            for got, want in zip(prod, coeffs):
                assert abs(got - want) < 1e-8 * scale

    def test_conjugate_closure(self):
        spec = solve_q(FamilyParams(5, 3), 0.4)
        pool = list(spec.roots)
        for z in spec.roots:
            match = min(pool, key=lambda w: abs(w - z.conjugate()))
            assert abs(match - z.conjugate()) < 1e-8

    def test_distinct_away_from_double_locus(self):
        spec = solve_q(FamilyParams(4, 3), 0.3)
        roots = spec.roots
        for i in range(len(roots)):
            for j in range(i + 1, len(roots)):
                assert abs(roots[i] - roots[j]) > 1e-6

    def test_double_pair_at_locus(self):
        params = FamilyParams(4, 3)
        dz = double_zero_theta(params)
        spec = solve_q(params, dz.theta_star)
        assert spec.double_root_pair is not None
        i, j = spec.double_root_pair
        for k in (i, j):
            assert abs(spec.roots[k] - dz.zeta_star) < 1e-6

    def test_ambiguous_near_boundary(self):
        # 1e-9 from pi/r the cluster roots sit within 1e-9 of the unit
        # circle, inside the classification band: refuse rather than guess
        with pytest.raises(CircleClassificationAmbiguous):
            solve_q(FamilyParams(2, 3), math.pi / 3 - 1e-9)

    def test_bad_tol(self):
        with pytest.raises(ValueError):
            solve_q(FamilyParams(2, 2), 0.3, tol=0.0)


class TestEvalR:
    def test_matches_closed_form_when_no_extra_roots(self):
        # max(n, r) = 2: only the boundary pair exists, so R_m is exactly
        # the amplitude form 2(A cos - B sin)/(A**2 + B**2)
        for n, r in [(2, 2), (1, 2)]:
            params = FamilyParams(n, r)
            for theta in (0.3, 0.7, 1.2):
                for m in (0, 3, 11):
                    s = z_of_theta(params, theta)
                    ang = (m + r) * theta
                    want = (
                        2.0
                        * (s.a_val * math.cos(ang) - s.b_val * math.sin(ang))
                        / (s.a_val**2 + s.b_val**2)
                    )
                    assert eval_R(params, theta, m) == pytest.approx(
                        want, rel=1e-12
                    )

    def test_sign_alternation_on_grid(self):
        params = FamilyParams(3, 2)
        m = 60
        for h, theta in enumerate(sign_grid(params, m), start=1):
            v = eval_R(params, theta, m)
            assert (v > 0) == (h % 2 == 0), f"sign wrong at h={h}"

    @pytest.mark.parametrize("n,r", CUBIC_FAMILIES)
    def test_agrees_with_cubic_oracle(self, n, r):
        params = FamilyParams(n, r)
        top = math.pi / r
        m = 17
        for j in range(1, 100):
            theta = 1e-4 + (top - 2e-4) * j / 100.0
            a = eval_R(params, theta, m)
            b = eval_R_cubic(params, theta, m)
            assert abs(a - b) < 1e-8 * max(1.0, abs(a), abs(b))

    def test_continuous_across_double_locus(self):
        params = FamilyParams(4, 3)
        dz = double_zero_theta(params)
        m = 12
        v0 = eval_R(params, dz.theta_star, m)
        vm = eval_R(params, dz.theta_star - 1e-4, m)
        vp = eval_R(params, dz.theta_star + 1e-4, m)
        lo, hi = sorted((vm, vp))
        assert lo - 1e-3 * abs(lo) <= v0 <= hi + 1e-3 * abs(hi)

    def test_rejects_negative_m(self):
        with pytest.raises(ValueError):
            eval_R(FamilyParams(2, 2), 0.3, -1)


class TestEvalRCubic:
    def test_wrong_degree(self):
        with pytest.raises(WrongDegree):
            eval_R_cubic(FamilyParams(2, 2), 0.3, 5)

    def test_m_zero_identity(self):
        # with the value-level normalization stripped off, R_0 reduces to
        # zeta2 - 2 cos(theta) + 1/zeta2 (the sign of the 1/zeta2 term is
        # the one the residue sum actually carries)
        params = FamilyParams(3, 1)
        for theta in (0.4, 1.0, 2.2):
            coeffs = build_q(params, theta)
            zeta2 = -coeffs[0] / coeffs[3]
            s_fac = zeta2 * zeta2 - 2 * zeta2 * math.cos(theta) + 1
            got = eval_R_cubic(params, theta, 0) * coeffs[3] * s_fac
            want = zeta2 - 2 * math.cos(theta) + 1 / zeta2
            assert got == pytest.approx(want, rel=1e-12)

    def test_sign_alternation_via_oracle(self):
        params = FamilyParams(3, 2)
        m = 40
        for h, theta in enumerate(sign_grid(params, m), start=1):
            v = eval_R_cubic(params, theta, m)
            assert (v > 0) == (h % 2 == 0)


class TestFindRRoots:
    def test_count_matches_degree(self):
        roots = find_R_roots(FamilyParams(3, 2), 40)
        assert len(roots) == 20
        assert all(0 < t < math.pi / 2 for t in roots)
        assert roots == sorted(roots)

    def test_small_m_empty(self):
        assert find_R_roots(FamilyParams(3, 2), 1) == []
        assert find_R_roots(FamilyParams(2, 3), 2) == []

    def test_roots_map_to_polynomial_zeros(self):
        from fractions import Fraction

        from hyperzero.family import generate

        params = FamilyParams(3, 2)
        m = 14
        poly = generate(params, m)[m]
        for theta in find_R_roots(params, m):
            z = z_of_theta(params, theta).z
            zq = Fraction(z)
            value = abs(poly(zq))
            scale = max(abs(c) * abs(zq) ** k for k, c in enumerate(poly.coeffs) if c)
            assert float(value / scale) < 1e-6

    def test_non_divisible_terminal_root_found(self):
        # floor(50/3) = 16 zeros; the last one hides between the final grid
        # angle and the boundary, where the boundary value decays to zero
        roots = find_R_roots(FamilyParams(4, 3), 50)
        assert len(roots) == 16
