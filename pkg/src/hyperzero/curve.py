"""The parametrized curve z(theta) and its companion quantities.

For theta in (0, pi/r) and phi = ((n-1)*pi + r*theta)/n the map

    z(theta) = sin(theta)**n / (sin(phi-theta)**(n-r) * sin(phi)**r)

is an increasing bijection onto the interval that eventually contains all
real zeros of the family.  This module evaluates the map and its inverse,
the interval endpoints (exact rationals), the amplitude pair (A, B) that
controls the boundary-pair oscillation, and the isolated parameter where
the characteristic polynomial acquires a double root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .family import FamilyParams, InvalidParams

# First correction term of true pi beyond the double math.pi; together they
# give pi to ~32 digits, enough to take endpoint distances with full
# relative precision.
_PI_LO = 1.2246467991473532e-16


class OutOfDomain(ValueError):
    """theta outside the open interval (0, pi/r)."""


class OutOfInterval(ValueError):
    """z outside the open interval attained by z(theta)."""


class WrongCase(ValueError):
    """Endpoint limits requested for a parameter case that has none."""


@dataclass(frozen=True)
class IntervalI:
    """Open interval with exact rational endpoints; hi=None encodes +infinity."""

    lo: Fraction
    hi: Optional[Fraction]

    @property
    def lo_float(self) -> float:
        return float(self.lo)

    @property
    def hi_float(self) -> float:
        return math.inf if self.hi is None else float(self.hi)

    def contains(self, z: float) -> bool:
        """Strict interior membership."""
        if not z > self.lo:
            return False
        return self.hi is None or z < float(self.hi)


@dataclass(frozen=True)
class ThetaSample:
    """One point of the curve with its derived quantities."""

    theta: float
    phi: float
    z: float
    a_val: float
    b_val: float
    t0_ratio: float


class EndpointLimits(NamedTuple):
    """The four analytic ratio limits at the domain endpoints.

    The first two apply when r = 1 (theta -> pi), the last two when n = 1
    (theta -> 0); inapplicable entries are None.
    """

    theta_over_phi_minus_theta: Optional[float]  # -> n/(n-1)
    theta_over_phi: Optional[float]  # -> n
    theta_over_phi_at_zero: Optional[float]  # -> 1/r
    phi_minus_theta_over_phi: Optional[float]  # -> (r-1)/r


class DoubleZero(NamedTuple):
    theta_star: float
    z_star: float
    zeta_star: float


class Angles(NamedTuple):
    """sin/cos bundle for one theta, safe against endpoint cancellation."""

    phi: float
    sin_theta: float
    sin_phi: float
    sin_phi_minus_theta: float
    cos_phi_minus_theta: float


def interval_I(params: FamilyParams) -> IntervalI:
    """The open interval onto which z(theta) maps (0, pi/r), exactly.

    (0, n**n/(n-1)**(n-1)) when r = 1; ((r-1)**(r-1)/r**r, +inf) when n = 1;
    (0, +inf) when n, r >= 2.
    """
    n, r = params.n, params.r
    if max(n, r) <= 1:
        raise InvalidParams("need max(n, r) > 1")
    if r == 1:
        return IntervalI(Fraction(0), Fraction(n**n, (n - 1) ** (n - 1)))
    if n == 1:
        return IntervalI(Fraction((r - 1) ** (r - 1), r**r), None)
    return IntervalI(Fraction(0), None)


def phi_of_theta(params: FamilyParams, theta: float) -> float:
    return ((params.n - 1) * math.pi + params.r * theta) / params.n


def _check_domain(params: FamilyParams, theta: float) -> None:
    if not 0.0 < theta < math.pi / params.r:
        raise OutOfDomain(f"theta={theta} not in (0, pi/{params.r})")


def _endpoint_distance(params: FamilyParams, theta: float) -> float:
    """pi/r - theta with the two-term pi, exact to full relative precision."""
    r = params.r
    q = math.pi / r
    # q - theta is exact (the operands are within a factor of two); the
    # correction recovers what rounding math.pi/r and math.pi itself lost.
    corr = float(Fraction(math.pi) / r - Fraction(q)) + _PI_LO / r
    return (q - theta) + corr


def angles_of_theta(params: FamilyParams, theta: float) -> Angles:
    """The sines and cosines every curve quantity is built from.

    Near theta = pi/r both phi and (when r = 1) theta approach pi, where
    sin evaluated at the raw angle keeps only absolute accuracy; the
    vanishing sines are instead taken at small exact angles derived from
    the endpoint distance eta = pi/r - theta:

        phi = pi - r*eta/n            -> sin(phi) = sin(r*eta/n)
        r = 1: theta = pi - eta       -> sin(theta) = sin(eta)
        r = 1: phi - theta = (n-1)*eta/n
        r >= 2: phi - theta = pi*(r-1)/r + eta*(n-r)/n   (regular size)
    """
    _check_domain(params, theta)
    n, r = params.n, params.r
    eta = _endpoint_distance(params, theta)
    if eta < 1e-3:
        sin_phi = math.sin(r * eta / n)
        phi = math.pi - r * eta / n
        if r == 1:
            sin_theta = math.sin(eta)
            small = (n - 1) * eta / n
            return Angles(phi, sin_theta, sin_phi, math.sin(small), math.cos(small))
        diff = math.pi * (r - 1) / r + eta * (n - r) / n
        return Angles(
            phi, math.sin(theta), sin_phi, math.sin(diff), math.cos(diff)
        )
    phi = phi_of_theta(params, theta)
    return Angles(
        phi,
        math.sin(theta),
        math.sin(phi),
        math.sin(phi - theta),
        math.cos(phi - theta),
    )


def z_of_theta(params: FamilyParams, theta: float) -> ThetaSample:
    """Evaluate the curve and its companions at one parameter value.

    z is computed in grouped form, as a product of the bounded sine ratios,
    which avoids the 0/0 magnification of the raw quotient near the ends:

        r < n:  (sin th / sin(phi-th))**(n-r) * (sin th / sin phi)**r
        r > n:  (sin th / sin phi)**n * (sin(phi-th) / sin phi)**(r-n)
        r = n:  (sin th / sin phi)**n

    A = -n*(sin phi/sin th)*cos(phi-th) + r and B = n*(sin phi/sin th)*
    sin(phi-th) are the boundary-pair oscillation amplitudes; t0_ratio is
    |t0| = sin(phi)/sin(phi-theta), the modulus of the principal t-zero.
    """
    n, r = params.n, params.r
    ang = angles_of_theta(params, theta)
    st, sp, spt = ang.sin_theta, ang.sin_phi, ang.sin_phi_minus_theta
    if n > r:
        z = (st / spt) ** (n - r) * (st / sp) ** r
    elif n < r:
        z = (st / sp) ** n * (spt / sp) ** (r - n)
    else:
        z = (st / sp) ** n
    ratio = sp / st
    a_val = -n * ratio * ang.cos_phi_minus_theta + r
    b_val = n * ratio * spt
    return ThetaSample(theta, ang.phi, z, a_val, b_val, sp / spt)


def theta_of_z(params: FamilyParams, z: float, tol: float = 1e-10) -> float:
    """Invert the increasing map z(theta) by bisection.

    Stops when |z(theta) - z| < tol or the bracket is one ulp wide.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    iv = interval_I(params)
    if not iv.contains(z):
        raise OutOfInterval(f"z={z} outside {iv}")
    top = math.pi / params.r
    eps = top * 1e-3
    lo, hi = eps, top - eps
    while z_of_theta(params, lo).z >= z or z_of_theta(params, hi).z <= z:
        eps /= 16.0
        if eps < 1e-300:
            raise OutOfInterval(f"could not bracket z={z}")
        lo, hi = eps, top - eps
    while hi - lo > 1e-15:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        zm = z_of_theta(params, mid).z
        if abs(zm - z) < tol:
            return mid
        if zm < z:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def endpoint_limits(params: FamilyParams) -> EndpointLimits:
    """Analytic limits of the sine ratios at the relevant domain endpoint.

    r = 1: sin(th)/sin(phi-th) -> n/(n-1) and sin(th)/sin(phi) -> n as
    th -> pi.  n = 1: sin(th)/sin(phi) -> 1/r and sin(phi-th)/sin(phi) ->
    (r-1)/r as th -> 0.  Any other parameter case has no finite endpoint
    ratio story and raises WrongCase.
    """
    n, r = params.n, params.r
    if r == 1:
        return EndpointLimits(n / (n - 1), float(n), None, None)
    if n == 1:
        return EndpointLimits(None, None, 1.0 / r, (r - 1) / r)
    raise WrongCase("endpoint limits exist only for r = 1 or n = 1")


def double_zero_theta(
    params: FamilyParams, tol: float = 1e-13
) -> Optional[DoubleZero]:
    """The unique parameter where the characteristic polynomial has a double root.

    Exists only when n > r > 1 with r odd, or r > n > 1 with n odd.  The
    double-root condition pins the curve value exactly:

        z* = (-1)**(r+1) * n**n / (r**r * (n-r)**(n-r)),

    computed as an exact rational (note (n-r)**(n-r) is a rational for
    n < r as well); theta* is then recovered through the inverse map, and
    zeta* = -(r/(n-r)) * sin(phi-theta*)/sin(phi*) is the repeated root.

    The default tol is deliberately tight: the double root splits like
    sqrt(|theta - theta*|), so recovering theta* to ~1e-14 is what makes the
    split at the returned parameter fall inside the pair-detection window.
    """
    n, r = params.n, params.r
    case_one = n > r > 1 and r % 2 == 1
    case_two = r > n > 1 and n % 2 == 1
    if not (case_one or case_two):
        return None
    z_star = Fraction((-1) ** (r + 1) * n**n) / (
        Fraction(r**r) * Fraction(n - r) ** (n - r)
    )
    theta_star = theta_of_z(params, float(z_star), tol)
    # the repeated root of the characteristic polynomial splits like
    # sqrt(|theta - theta*|), so a double-precision theta* (good to ~1e-15
    # at best through the noisy inverse map) leaves a visible split; a
    # short high-precision polish pins theta* to the nearest double.
    theta_star = _polish_double_zero(params, theta_star, z_star)
    sample = z_of_theta(params, theta_star)
    zeta_star = -(r / (n - r)) / sample.t0_ratio
    return DoubleZero(theta_star, float(z_star), zeta_star)


def _polish_double_zero(
    params: FamilyParams, theta0: float, z_star: Fraction
) -> float:
    import mpmath as mp

    n, r = params.n, params.r
    with mp.workdps(50):
        target = mp.mpf(z_star.numerator) / z_star.denominator

        def gap(theta):
            phi = ((n - 1) * mp.pi + r * theta) / n
            z = mp.sin(theta) ** n / (
                mp.sin(phi - theta) ** (n - r) * mp.sin(phi) ** r
            )
            return z - target

        refined = mp.findroot(gap, mp.mpf(theta0))
        return float(refined)
