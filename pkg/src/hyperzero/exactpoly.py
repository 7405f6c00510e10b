"""Exact dense univariate polynomials and Sturm-based real root counting.

Coefficients are arbitrary-precision integers (``IntPoly``) or rationals
(``RatPoly``), stored ascending by power.  The zero polynomial is the empty
coefficient tuple and has degree ``-inf``.  Root counting goes through a
Sturm chain built fraction-free over the integers, so every count returned
by this module is a certificate, not an estimate.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Optional, Sequence, Union

NEG_INF = float("-inf")

Scalar = Union[int, Fraction]


class ZeroPolynomial(ValueError):
    """Operation undefined for the zero polynomial."""


class EndpointIsRoot(ValueError):
    """A Sturm query endpoint is a root of the polynomial."""


def _strip(coeffs: list) -> tuple:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class _DensePoly:
    """Shared arithmetic for the two concrete coefficient domains."""

    __slots__ = ("coeffs",)
    coeffs: tuple

    @staticmethod
    def _coerce(c):  # overridden by subclasses
        raise NotImplementedError

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _strip([self._coerce(c) for c in coeffs]))

    @classmethod
    def of(cls, *coeffs):
        return cls(coeffs)

    @property
    def degree(self):
        """Degree, or -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, _DensePoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((type(self).__name__, self.coeffs))

    def __call__(self, x):
        """Evaluate by Horner's rule; exact when x is int or Fraction."""
        acc = 0 * x if self.coeffs else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __neg__(self):
        return type(self)([-c for c in self.coeffs])

    def __add__(self, other):
        cls = _result_type(self, other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return cls(out)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        cls = _result_type(self, other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return cls()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return cls(out)

    def scale(self, k):
        """Multiply every coefficient by the scalar k."""
        cls = RatPoly if isinstance(k, Fraction) and not isinstance(self, RatPoly) else type(self)
        return cls([c * k for c in self.coeffs])

    def shift_up(self, k: int):
        """Multiply by z**k."""
        if not self.coeffs:
            return type(self)()
        return type(self)((0,) * k + self.coeffs)

    def derivative(self):
        return type(self)([i * c for i, c in enumerate(self.coeffs)][1:])

    def to_rat(self) -> "RatPoly":
        return RatPoly(self.coeffs)

    def __repr__(self):
        return f"{type(self).__name__}({list(self.coeffs)!r})"


class IntPoly(_DensePoly):
    """Dense polynomial over arbitrary-precision integers."""

    @staticmethod
    def _coerce(c):
        return operator.index(c)


class RatPoly(_DensePoly):
    """Dense polynomial over exact rationals (always in lowest terms)."""

    @staticmethod
    def _coerce(c):
        return c if isinstance(c, Fraction) else Fraction(c)


def _result_type(a: _DensePoly, b: _DensePoly):
    if isinstance(a, RatPoly) or isinstance(b, RatPoly):
        return RatPoly
    return IntPoly


def poly_add(a: _DensePoly, b: _DensePoly) -> _DensePoly:
    return a + b


def poly_sub(a: _DensePoly, b: _DensePoly) -> _DensePoly:
    return a - b


def poly_mul(a: _DensePoly, b: _DensePoly) -> _DensePoly:
    return a * b


def poly_scale(p: _DensePoly, k) -> _DensePoly:
    return p.scale(k)


@dataclass(frozen=True)
class IsolatedRoot:
    """A closed rational interval certified to contain exactly one real root.

    ``exact`` is set when the root itself is a known rational, in which case
    lo == hi == exact.
    """

    lo: Fraction
    hi: Fraction
    exact: Optional[Fraction] = None

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x, slack=Fraction(0)) -> bool:
        return self.lo - slack <= x <= self.hi + slack


# ---------------------------------------------------------------------------
# Sturm machinery: fraction-free chains over the integers.
# ---------------------------------------------------------------------------


def _content(coeffs: Sequence[int]) -> int:
    return reduce(math.gcd, (abs(c) for c in coeffs), 0)


def _primitive(coeffs: Sequence[int]) -> list:
    """Divide out the (positive) content; preserves every coefficient sign."""
    g = _content(coeffs)
    if g > 1:
        return [c // g for c in coeffs]
    return list(coeffs)


def _pseudo_rem_abs(a: Sequence[int], b: Sequence[int]) -> list:
    """Remainder of |lc(b)|**k * a modulo b, fraction-free over the integers.

    The scale factor is a positive power of |lc(b)|, so the result has the
    same signs as the true polynomial remainder everywhere.
    """
    db = len(b) - 1
    lb = b[-1]
    al = abs(lb)
    rem = list(a)
    while len(rem) - 1 >= db:
        if rem[-1] == 0:
            rem.pop()
            continue
        rem = [c * al for c in rem]
        q = rem[-1] // lb  # exact: rem[-1] is a multiple of |lb|
        off = len(rem) - 1 - db
        for i in range(db + 1):
            rem[off + i] -= q * b[i]
        while rem and rem[-1] == 0:
            rem.pop()
    return rem


def _to_int_coeffs(p: _DensePoly) -> list:
    """Clear denominators; the positive multiplier keeps signs and roots."""
    if isinstance(p, IntPoly):
        return list(p.coeffs)
    lcm = 1
    for c in p.coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return [int(c * lcm) for c in p.coeffs]


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class SturmChain:
    """Sturm chain of one polynomial, reusable across many interval queries.

    Chain elements are primitive integer polynomials; each is a positive
    multiple of the textbook chain element, which leaves every sign pattern
    intact.  Endpoint evaluation is homogeneous integer arithmetic, so sign
    decisions are exact.
    """

    def __init__(self, p: _DensePoly):
        coeffs = _to_int_coeffs(p)
        if not coeffs:
            raise ZeroPolynomial("Sturm chain of the zero polynomial is undefined")
        chain = [_primitive(coeffs)]
        if len(coeffs) > 1:
            chain.append(_primitive([i * c for i, c in enumerate(coeffs)][1:]))
            while len(chain[-1]) > 1:
                rem = _pseudo_rem_abs(chain[-2], chain[-1])
                if not rem:
                    break  # nonconstant gcd: input had a multiple root
                chain.append(_primitive([-c for c in rem]))
        self.chain = chain

    def _signs_at(self, q: Fraction) -> list:
        num, den = q.numerator, q.denominator
        signs = []
        for p in self.chain:
            d = len(p) - 1
            acc = 0
            bp = 1
            for i in range(d, -1, -1):
                acc = acc * num + p[i] * bp
                bp *= den
            signs.append(0 if acc == 0 else (1 if acc > 0 else -1))
        return signs

    @staticmethod
    def _variations(signs: Sequence[int]) -> int:
        nz = [s for s in signs if s != 0]
        return sum(1 for a, b in zip(nz, nz[1:]) if a != b)

    def variations_at(self, q) -> int:
        return self._variations(self._signs_at(_as_fraction(q)))

    def value_sign_at(self, q) -> int:
        return self._signs_at(_as_fraction(q))[0]

    def count(self, lo, hi) -> int:
        """Exact number of distinct real roots in the open interval (lo, hi)."""
        lo, hi = _as_fraction(lo), _as_fraction(hi)
        if not lo < hi:
            raise ValueError(f"need lo < hi, got {lo} >= {hi}")
        s_lo = self._signs_at(lo)
        s_hi = self._signs_at(hi)
        if s_lo[0] == 0:
            raise EndpointIsRoot(f"p({lo}) = 0")
        if s_hi[0] == 0:
            raise EndpointIsRoot(f"p({hi}) = 0")
        return self._variations(s_lo) - self._variations(s_hi)

    def isolate(self, lo, hi, width) -> list:
        """Disjoint intervals of width <= width, one distinct root in each.

        Bisection driven by the interval counts; a bisection point that is
        itself a root is returned as an exact (zero-width) bracket.
        """
        lo, hi, width = _as_fraction(lo), _as_fraction(hi), _as_fraction(width)
        if width <= 0:
            raise ValueError("width must be positive")
        total = self.count(lo, hi)
        out = []
        stack = [(lo, hi, total)]
        while stack:
            a, b, k = stack.pop()
            if k == 0:
                continue
            if k == 1 and b - a <= width:
                out.append(IsolatedRoot(a, b))
                continue
            mid = (a + b) / 2
            if self.value_sign_at(mid) == 0:
                out.append(IsolatedRoot(mid, mid, exact=mid))
                # shrink a punched-out neighborhood until it holds mid alone
                delta = (b - a) / 4
                while True:
                    left, right = mid - delta, mid + delta
                    if (
                        left > a
                        and right < b
                        and self.value_sign_at(left) != 0
                        and self.value_sign_at(right) != 0
                        and self.count(left, right) == 1
                    ):
                        break
                    delta /= 2
                stack.append((a, left, self.count(a, left)))
                stack.append((right, b, self.count(right, b)))
            else:
                k_left = self.count(a, mid)
                stack.append((a, mid, k_left))
                stack.append((mid, b, k - k_left))
        out.sort(key=lambda iv: iv.lo)
        return out


def sturm_count(p: _DensePoly, lo, hi) -> int:
    """Exact count of distinct real roots of p in (lo, hi).

    Endpoints must be rational and must not be roots; callers that cannot
    guarantee that nudge the endpoints before calling.
    """
    return SturmChain(p).count(lo, hi)


def isolate_roots(p: _DensePoly, lo, hi, width) -> list:
    """Isolate every real root of p in (lo, hi) to intervals of width <= width."""
    return SturmChain(p).isolate(lo, hi, width)


def cauchy_root_bound(p: _DensePoly) -> Fraction:
    """Exact rational B with every complex root of p inside |x| < B."""
    if p.is_zero():
        raise ZeroPolynomial("root bound of the zero polynomial is undefined")
    coeffs = [_as_fraction(c) for c in p.coeffs]
    lead = abs(coeffs[-1])
    if len(coeffs) == 1:
        return Fraction(1)
    return 1 + max(abs(c) for c in coeffs[:-1]) / lead
