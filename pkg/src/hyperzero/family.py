"""Polynomial families generated by 1/((1-t)**n + z*t**r).

``generate`` unrolls the coefficient recurrence exactly over the integers;
``eval_series_oracle`` recomputes single values by a contour integral so the
two routes share nothing but the denominator definition.  ``generate_general``
extends the recurrence to arbitrary denominators Q(t) + z*t**r.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from ._aberth import aberth_roots, horner
from .exactpoly import IntPoly, RatPoly


class InvalidParams(ValueError):
    """The family parameters violate max(n, r) > 1."""


class ZeroConstantTerm(ValueError):
    """The general denominator has Q(0) = 0, so no power series exists."""


class SingularOnContour(ArithmeticError):
    """The quadrature contour passes through (or hugs) a pole."""


@dataclass(frozen=True)
class FamilyParams:
    """The exponent pair (n, r) of the denominator (1-t)**n + z*t**r."""

    n: int
    r: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and isinstance(self.r, int)):
            raise InvalidParams("n and r must be integers")
        if self.n < 1 or self.r < 1:
            raise InvalidParams("n and r must be positive")
        if max(self.n, self.r) <= 1:
            raise InvalidParams("need max(n, r) > 1")

    @property
    def max_nr(self) -> int:
        return max(self.n, self.r)

    def degree_bound(self, m: int) -> int:
        """Upper bound floor(m/r) on the degree of the m-th polynomial."""
        return m // self.r


@dataclass(frozen=True)
class GeneralDenominator:
    """Denominator Q(t) + z*t**r with caller-supplied Q.

    The claim that Q has only positive real zeros is *not* checked; the flag
    merely records that the caller asserts it, and travels with any output
    built from this object.
    """

    qcoeffs: tuple
    r: int
    assumes_positive_real_zeros: bool = True

    def __post_init__(self):
        object.__setattr__(
            self, "qcoeffs", tuple(Fraction(c) for c in self.qcoeffs)
        )
        if self.r < 1:
            raise InvalidParams("r must be positive")


def generate(params: FamilyParams, m_max: int) -> List[IntPoly]:
    """The polynomials P_0 .. P_m_max, exactly, from the recurrence.

    Matching powers of t in ((1-t)**n + z*t**r) * sum P_m t**m = 1 gives
    P_0 = 1 and, for m >= 1,

        P_m = sum_{j=1..min(n,m)} (-1)**(j+1) C(n,j) P_{m-j}  -  z * P_{m-r}

    with the z-term present only when m >= r.  All coefficients stay integers.
    """
    if m_max < 0:
        raise ValueError("m_max must be >= 0")
    n, r = params.n, params.r
    polys = [IntPoly.of(1)]
    for m in range(1, m_max + 1):
        acc = IntPoly()
        for j in range(1, min(n, m) + 1):
            coef = (-1) ** (j + 1) * math.comb(n, j)
            acc = acc + polys[m - j].scale(coef)
        if m >= r:
            acc = acc - polys[m - r].shift_up(1)
        polys.append(acc)
    return polys


def generate_general(den: GeneralDenominator, m_max: int) -> List[RatPoly]:
    """Power-series coefficients of 1/(Q(t) + z*t**r) as polynomials in z.

    Same coefficient matching as ``generate`` with Q's coefficients in place
    of the binomial ones; rationals appear because Q(0) need not be 1.
    """
    if m_max < 0:
        raise ValueError("m_max must be >= 0")
    q = den.qcoeffs
    if not q or q[0] == 0:
        raise ZeroConstantTerm("Q(0) = 0: the series 1/(Q + z t**r) does not exist")
    q0 = q[0]
    polys = [RatPoly.of(Fraction(1) / q0)]
    for m in range(1, m_max + 1):
        acc = RatPoly()
        for i in range(1, min(len(q) - 1, m) + 1):
            if q[i]:
                acc = acc + polys[m - i].scale(-q[i])
        if m >= den.r:
            acc = acc - polys[m - den.r].shift_up(1)
        polys.append(acc.scale(Fraction(1) / q0))
    return polys


def _denominator_coeffs(params: FamilyParams, z0: complex) -> list:
    """(1-t)**n + z0*t**r as a coefficient list in t, ascending."""
    n, r = params.n, params.r
    coeffs = [0j] * (max(n, r) + 1)
    for j in range(n + 1):
        coeffs[j] += math.comb(n, j) * (-1) ** j
    coeffs[r] += z0
    return coeffs


def eval_series_oracle(
    params: FamilyParams,
    m: int,
    z0: float,
    radius: Optional[float] = None,
    nodes: Optional[int] = None,
) -> complex:
    """Independent value of P_m(z0) by a trapezoidal contour integral.

    P_m(z0) is the t**m series coefficient, i.e. the circle integral of
    1/(t**(m+1) D(t, z0)) over any circle enclosing 0 and no zero of D.
    The radius defaults to 0.9 times the smallest |t|-zero of D(., z0):
    hugging that zero keeps the summands within a few orders of magnitude
    of the answer, which a fixed small radius cannot do once m is large
    (the quadrature then cancels ~m digits and double precision is spent).
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    dcoeffs = _denominator_coeffs(params, z0)
    if radius is None:
        troots = aberth_roots(dcoeffs)
        radius = 0.9 * min(abs(t) for t in troots)
    if radius <= 0:
        raise ValueError("radius must be positive")
    n_nodes = nodes if nodes is not None else max(4 * (m + 1), 256)
    if n_nodes < 1:
        raise ValueError("nodes must be positive")
    total = 0j
    step = 2.0 * math.pi / n_nodes
    for j in range(n_nodes):
        t = radius * cmath.exp(1j * step * j)
        dval = horner(dcoeffs, t)
        if abs(dval) < 1e-12:
            raise SingularOnContour(
                f"|D| = {abs(dval):.2e} at node {j} on radius {radius:.6g}"
            )
        total += cmath.exp(-1j * step * j * m) / dval
    return total / (n_nodes * radius**m)
