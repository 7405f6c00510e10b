import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperzero.exactpoly import (
    EndpointIsRoot,
    IntPoly,
    RatPoly,
    SturmChain,
    ZeroPolynomial,
    cauchy_root_bound,
    isolate_roots,
    poly_add,
    poly_mul,
    poly_scale,
    poly_sub,
    sturm_count,
)

F = Fraction


class TestArithmetic:
    def test_difference_of_squares(self):
        a = IntPoly.of(1, 1)
        b = IntPoly.of(1, -1)
        assert poly_mul(a, b) == IntPoly.of(1, 0, -1)

    def test_zero_is_absorbing(self):
        p = IntPoly.of(3, 0, 7)
        assert poly_mul(p, IntPoly()) == IntPoly()
        assert poly_mul(p, IntPoly()).coeffs == ()

    def test_hand_expansion_family_member(self):
        # (2 - z)**2 - 1 = 3 - 4z + z**2, the m=2 member for (n, r) = (2, 1)
        two_minus_z = IntPoly.of(2, -1)
        p = poly_sub(poly_mul(two_minus_z, two_minus_z), IntPoly.of(1))
        assert p == IntPoly.of(3, -4, 1)

    def test_add_sub_scale(self):
        p = IntPoly.of(1, 2, 3)
        q = IntPoly.of(5, -2, -3)
        assert poly_add(p, q) == IntPoly.of(6)
        assert poly_sub(poly_add(p, q), q) == p
        assert poly_scale(p, -2) == IntPoly.of(-2, -4, -6)

    def test_degree_bookkeeping(self):
        assert IntPoly().degree == float("-inf")
        assert IntPoly.of(7).degree == 0
        # cancellation of the leading terms drops the degree exactly
        assert poly_add(IntPoly.of(0, 0, 1), IntPoly.of(1, 0, -1)).degree == 0

    def test_mixed_arithmetic_promotes(self):
        p = IntPoly.of(1, 2)
        q = RatPoly.of(F(1, 2))
        out = poly_mul(p, q)
        assert isinstance(out, RatPoly)
        assert out == RatPoly.of(F(1, 2), 1)

    def test_evaluation_exact(self):
        p = IntPoly.of(3, -4, 1)
        assert p(F(1)) == 0
        assert p(3) == 0
        assert p(F(1, 2)) == F(5, 4)

    def test_shift_and_derivative(self):
        p = IntPoly.of(1, 1)
        assert p.shift_up(2) == IntPoly.of(0, 0, 1, 1)
        assert IntPoly.of(3, -4, 1).derivative() == IntPoly.of(-4, 2)


class TestSturmCount:
    def test_two_roots_by_quadratic_formula(self):
        # z**2 - 4z + 3: roots (4 +- sqrt(16-12))/2 = 1 and 3
        p = RatPoly.of(3, -4, 1)
        assert sturm_count(p, 0, 4) == 2

    def test_no_real_roots(self):
        assert sturm_count(RatPoly.of(1, 0, 1), -10, 10) == 0

    def test_half_window(self):
        assert sturm_count(RatPoly.of(3, -4, 1), 2, 4) == 1

    def test_endpoint_root_raises(self):
        with pytest.raises(EndpointIsRoot):
            sturm_count(RatPoly.of(3, -4, 1), 1, 4)
        with pytest.raises(EndpointIsRoot):
            sturm_count(RatPoly.of(3, -4, 1), 0, 3)

    def test_zero_polynomial_raises(self):
        with pytest.raises(ZeroPolynomial):
            sturm_count(RatPoly(), 0, 1)

    def test_bad_interval_raises(self):
        with pytest.raises(ValueError):
            sturm_count(RatPoly.of(1, 1), 2, 2)

    def test_constant_has_no_roots(self):
        assert sturm_count(RatPoly.of(5), -100, 100) == 0

    def test_multiple_root_counted_once(self):
        # (z - 1)**2: Sturm counts distinct roots
        assert sturm_count(RatPoly.of(1, -2, 1), 0, 2) == 1

    def test_rational_coefficients(self):
        # (z - 1/2)(z - 3/2) scaled by 1/4
        p = RatPoly.of(F(3, 16), F(-1, 2), F(1, 4))
        assert sturm_count(p, 0, 2) == 2
        assert sturm_count(p, 1, 2) == 1


class TestIsolateRoots:
    def test_quadratic_brackets(self):
        p = RatPoly.of(3, -4, 1)
        roots = isolate_roots(p, 0, 4, F(1, 100))
        assert len(roots) == 2
        assert roots[0].contains(F(1)) and roots[1].contains(F(3))
        assert all(r.width <= F(1, 100) for r in roots)

    def test_constant_gives_empty(self):
        assert isolate_roots(RatPoly.of(5), 0, 10, F(1, 10)) == []

    def test_family_member_roots(self):
        # 1 - 3z + z**2 (the m=4 member for (n, r) = (1, 2)):
        # quadratic formula gives (3 +- sqrt(5))/2
        p = RatPoly.of(1, -3, 1)
        roots = isolate_roots(p, F(1, 4), 10, F(1, 1000))
        assert len(roots) == 2
        lo_root = (3 - math.sqrt(5)) / 2
        hi_root = (3 + math.sqrt(5)) / 2
        assert float(roots[0].lo) <= lo_root <= float(roots[0].hi)
        assert float(roots[1].lo) <= hi_root <= float(roots[1].hi)

    def test_exact_rational_root_detected(self):
        # bisection of (0, 4) lands exactly on the roots 1 and 3
        p = RatPoly.of(3, -4, 1)
        roots = isolate_roots(p, 0, 4, F(1, 10**6))
        exacts = {r.exact for r in roots if r.exact is not None}
        assert exacts == {F(1), F(3)}

    def test_cauchy_bound_contains_roots(self):
        p = IntPoly.of(3, -4, 1)
        b = cauchy_root_bound(p)
        assert b >= 3
        assert sturm_count(p, -b, b) == 2


def _planted_poly(numdens, lead):
    p = IntPoly.of(lead)
    for num, den in numdens:
        p = poly_mul(p, IntPoly.of(-num, den))
    return p


root_frac = st.tuples(
    st.integers(min_value=-12, max_value=12), st.integers(min_value=1, max_value=5)
)


@settings(max_examples=60, deadline=None)
@given(
    roots=st.lists(root_frac, min_size=1, max_size=6),
    lead=st.integers(min_value=-4, max_value=4).filter(lambda x: x != 0),
    bounds=st.tuples(
        st.integers(min_value=-40, max_value=40),
        st.integers(min_value=-40, max_value=40),
    ),
)
def test_count_matches_planted_roots(roots, lead, bounds):
    p = _planted_poly(roots, lead)
    values = sorted({F(num, den) for num, den in roots})
    a, b = sorted(F(x, 3) for x in bounds)
    if a == b or a in values or b in values:
        return
    expected = sum(1 for v in values if a < v < b)
    assert sturm_count(p, a, b) == expected


@settings(max_examples=30, deadline=None)
@given(
    roots=st.lists(root_frac, min_size=1, max_size=5, unique=True),
    lead=st.integers(min_value=1, max_value=3),
)
def test_isolation_properties(roots, lead):
    p = _planted_poly(roots, lead)
    values = sorted({F(num, den) for num, den in roots})
    lo, hi = F(-13), F(13)
    chain = SturmChain(p)
    total = chain.count(lo, hi)
    width = F(1, 50)
    brackets = chain.isolate(lo, hi, width)
    assert len(brackets) == total == len(values)
    # sorted, pairwise disjoint, each certified to hold exactly one root
    for a, b in zip(brackets, brackets[1:]):
        assert a.hi <= b.lo
    for br, v in zip(brackets, values):
        assert br.contains(v)
        assert br.width <= width
    # sum of per-bracket counts equals the global count
    per_bracket = 0
    for br in brackets:
        pad = width / 100
        per_bracket += chain.count(br.lo - pad, br.hi + pad)
    assert per_bracket == total
    # a 10x finer width never changes how many brackets come back
    finer = chain.isolate(lo, hi, width / 10)
    assert len(finer) == len(brackets)
