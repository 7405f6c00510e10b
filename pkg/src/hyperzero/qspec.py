"""Characteristic polynomial Q(zeta) at fixed theta, its spectrum, and R_m.

Q(zeta) = (sin(phi-theta)/sin(theta) - zeta*sin(phi)/sin(theta))**n + zeta**r
carries the rescaled t-zeros of the generating denominator.  Two roots sit
on the unit circle at exp(+-i*theta); every other root lies strictly
outside.  The oscillation function

    R_m(theta) = sum_k 1 / (zeta_k**(m+1) * Q'(zeta_k))

is real, and its zeros in (0, pi/r) are exactly the curve parameters of the
real zeros of P_m.  The circle pair is summed in closed form through the
amplitudes (A, B); the remaining terms decay like |zeta_k|**-(m+1).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from ._aberth import NoConvergence, aberth_roots, horner
from .curve import OutOfDomain, _check_domain, angles_of_theta, z_of_theta
from .family import FamilyParams

CIRCLE_TOL = 1e-8
PAIR_TOL = 1e-6
# Raw iterated roots of a (near-)double pair split by the square root of the
# coefficient noise, well above PAIR_TOL; pairs inside this coarser window
# get the critical-point refinement before the PAIR_TOL verdict.
PAIR_DETECT = 1e-4

CPoint = complex  # stored as (re, im) pairs only at the serialization edge


class CircleClassificationAmbiguous(ArithmeticError):
    """A root hugs the unit circle but is not the conjugate boundary pair."""


class WrongDegree(ValueError):
    """The closed cubic form needs max(n, r) = 3."""


@dataclass(frozen=True)
class QSpectrum:
    """Full root set of Q at one theta, classified against the unit circle.

    Roots are sorted by modulus, ties broken by argument, which puts the
    boundary pair first (exp(-i*theta), then exp(+i*theta)).  ``margin`` is
    min |zeta_k| - 1 over the off-circle roots (None when there are none).
    """

    theta: float
    roots: Tuple[complex, ...]
    on_circle_indices: Tuple[int, ...]
    double_root_pair: Optional[Tuple[int, int]]
    margin: Optional[float]


def build_q(params: FamilyParams, theta: float) -> List[float]:
    """Coefficients of Q(zeta) at theta, ascending, degree max(n, r).

    Binomial expansion of (c0 - c1*zeta)**n with c0 = sin(phi-theta)/sin(theta)
    and c1 = sin(phi)/sin(theta), plus 1 on the zeta**r monomial.
    """
    n, r = params.n, params.r
    ang = angles_of_theta(params, theta)
    c0 = ang.sin_phi_minus_theta / ang.sin_theta
    c1 = ang.sin_phi / ang.sin_theta
    coeffs = [0.0] * (max(n, r) + 1)
    for j in range(n + 1):
        coeffs[j] += math.comb(n, j) * c0 ** (n - j) * (-c1) ** j
    coeffs[r] += 1.0
    return coeffs


def _trivial_pair(theta: float) -> Tuple[complex, complex]:
    return cmath.exp(-1j * theta), cmath.exp(1j * theta)


def _raw_roots(
    params: FamilyParams, theta: float, seeds: Sequence[complex] = ()
) -> List[complex]:
    """Roots of Q at theta; the known exact pair exp(+-i*theta) is pinned.

    Optional ``seeds`` (roots from a nearby theta) warm-start the remaining
    guesses; the entries closest to that theta's own boundary pair are
    replaced by the exact current pair.
    """
    coeffs = build_q(params, theta)
    pair = list(_trivial_pair(theta))
    movable: List[complex] = []
    if seeds:
        movable = list(seeds)
        for target in pair:
            j = min(range(len(movable)), key=lambda k: abs(movable[k] - target))
            movable.pop(j)
    return aberth_roots(coeffs, seeds=pair + movable, frozen=2)


def _split_trivial(
    roots: Sequence[complex], theta: float
) -> Tuple[List[complex], List[complex]]:
    """Partition into (boundary pair, others) by nearest-distance matching."""
    others = list(roots)
    pair = []
    for target in _trivial_pair(theta):
        j = min(range(len(others)), key=lambda k: abs(others[k] - target))
        pair.append(others.pop(j))
    return pair, others


def _closest_pair(points: Sequence[complex]) -> Optional[Tuple[int, int, float]]:
    best = None
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            d = abs(points[i] - points[j])
            if best is None or d < best[2]:
                best = (i, j, d)
    return best


def _refine_pair(
    params: FamilyParams, theta: float, za: complex, zb: complex
) -> Tuple[complex, complex]:
    """Re-place a colliding root pair through the local quadratic model.

    The individual members are ill-conditioned (they move like the square
    root of any perturbation, so double-precision coefficients alone smear
    them by ~1e-6) but the critical point w of Q between them is a
    well-conditioned simple root of Q'.  Rebuilding Q briefly in high
    precision, solving Q'(w) = 0, and re-placing the members at
    w +- sqrt(-2 Q(w)/Q''(w)) recovers them to the accuracy the supplied
    theta deserves.
    """
    import mpmath as mp

    n, r = params.n, params.r
    with mp.workdps(40):
        th = mp.mpf(theta)
        phi = ((n - 1) * mp.pi + r * th) / n
        st = mp.sin(th)
        c0 = mp.sin(phi - th) / st
        c1 = mp.sin(phi) / st
        coeffs = [mp.mpf(0)] * (max(n, r) + 1)
        for j in range(n + 1):
            coeffs[j] += mp.binomial(n, j) * c0 ** (n - j) * (-c1) ** j
        coeffs[r] += 1
        dc = [i * coeffs[i] for i in range(1, len(coeffs))]
        d2c = [i * dc[i] for i in range(1, len(dc))]

        def val(cs, z):
            acc = mp.mpc(0)
            for c in reversed(cs):
                acc = acc * z + c
            return acc

        w = mp.mpc(0.5 * (za + zb))
        for _ in range(80):
            ddp = val(d2c, w)
            if ddp == 0:
                return za, zb
            step = val(dc, w) / ddp
            w -= step
            if abs(step) < mp.mpf("1e-30") * max(1, abs(w)):
                break
        ddp = val(d2c, w)
        if ddp == 0:
            return za, zb
        s = mp.sqrt(-2 * val(coeffs, w) / ddp)
        return complex(w - s), complex(w + s)


def solve_q(params: FamilyParams, theta: float, tol: float = 1e-8) -> QSpectrum:
    """Find and classify all roots of Q at theta.

    Exactly two roots must sit within CIRCLE_TOL of the unit circle and match
    exp(+-i*theta) within tol; everything else must be strictly outside, with
    the smallest excess modulus reported as ``margin``.  A pair of roots that
    lands (after critical-point refinement) within PAIR_TOL of each other,
    possible only at the isolated double-root parameter, is flagged as
    ``double_root_pair``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    roots = _raw_roots(params, theta)
    on_circle = [z for z in roots if abs(abs(z) - 1.0) < CIRCLE_TOL]
    off_circle = [z for z in roots if abs(abs(z) - 1.0) >= CIRCLE_TOL]
    if len(on_circle) != 2:
        raise CircleClassificationAmbiguous(
            f"{len(on_circle)} roots within {CIRCLE_TOL} of the unit circle "
            f"at theta={theta}, expected the conjugate pair only"
        )
    zm, zp = _trivial_pair(theta)
    lo_arg = min(on_circle, key=lambda z: z.imag)
    hi_arg = max(on_circle, key=lambda z: z.imag)
    if abs(lo_arg - zm) > tol or abs(hi_arg - zp) > tol:
        raise CircleClassificationAmbiguous(
            f"on-circle roots {lo_arg}, {hi_arg} do not match exp(+-i*theta) "
            f"within {tol} at theta={theta}"
        )
    pair_dist = None
    found = _closest_pair(off_circle)
    if found is not None and found[2] < PAIR_DETECT:
        i, j, _ = found
        za, zb = _refine_pair(params, theta, off_circle[i], off_circle[j])
        off_circle[i], off_circle[j] = za, zb
        pair_dist = abs(za - zb)
    off_circle.sort(key=lambda z: (abs(z), _phase(z)))
    ordered = [lo_arg, hi_arg] + off_circle
    margin = min((abs(z) for z in off_circle), default=None)
    if margin is not None:
        margin -= 1.0
    pair = None
    if pair_dist is not None and pair_dist < PAIR_TOL:
        found = _closest_pair(off_circle)
        pair = (2 + found[0], 2 + found[1])
    return QSpectrum(
        theta=theta,
        roots=tuple(ordered),
        on_circle_indices=(0, 1),
        double_root_pair=pair,
        margin=margin,
    )


def _phase(z: complex) -> float:
    """atan2 of a complex point, with subnormal parts flushed to zero.

    Some libm builds flag subnormal arguments/results as range errors,
    which CPython turns into OverflowError; the flush costs < 1e-300 of
    angle, far below anything downstream can see.
    """
    re, im = z.real, z.imag
    if abs(im) < 1e-300:
        im = 0.0
    if abs(re) < 1e-300:
        re = 0.0
    return math.atan2(im, re)


def _pow_reciprocal(z: complex, k: int) -> complex:
    """1/z**k via polar form; 0 when |z|**k overflows (the term is dead)."""
    mod = abs(z)
    if mod <= 0.0:
        raise ZeroDivisionError("zero root in reciprocal power")
    log_mod = k * math.log(mod)
    if log_mod > 690.0:  # |z|**k > ~1e300
        return 0.0 + 0.0j
    if log_mod < -690.0:
        raise ArithmeticError(
            f"reciprocal power overflow: |z|={mod} inside the unit circle"
        )
    ang = -k * _phase(z)
    mag = math.exp(-log_mod)
    return complex(mag * math.cos(ang), mag * math.sin(ang))


def _eval_r_terms(
    params: FamilyParams,
    theta: float,
    m: int,
    seeds: Sequence[complex] = (),
) -> Tuple[float, List[complex]]:
    """(R_m(theta), roots) with the roots returned for warm restarts."""
    sample = z_of_theta(params, theta)
    a, b = sample.a_val, sample.b_val
    ang = (m + params.r) * theta
    main = 2.0 * (a * math.cos(ang) - b * math.sin(ang)) / (a * a + b * b)

    coeffs = build_q(params, theta)
    dcoeffs = [i * coeffs[i] for i in range(1, len(coeffs))]
    lead = coeffs[-1]
    roots = _raw_roots(params, theta, seeds=seeds)
    trivial, others = _split_trivial(roots, theta)

    re_parts = [main]
    im_parts = []
    pair = _closest_pair(others)
    if pair is not None and pair[2] < PAIR_DETECT:
        i, j, _ = pair
        center = 0.5 * (others[i] + others[j])
        rest = [others[k] for k in range(len(others)) if k not in (i, j)]
        rest += trivial
        # exact limit of the two colliding terms: with g = prod(center - rest),
        # the pair contributes -( (m+1)/center + sum 1/(center - l) )
        #                       / (lead * center**(m+1) * g)
        g = complex(lead)
        deriv_sum = 0j
        for z in rest:
            g *= center - z
            deriv_sum += 1.0 / (center - z)
        inv_pow = _pow_reciprocal(center, m + 1)
        term = -inv_pow / g * ((m + 1) / center + deriv_sum)
        re_parts.append(term.real)
        im_parts.append(term.imag)
        singles = rest[: len(rest) - 2]  # everything except the trivial pair
    else:
        singles = others
    for z in singles:
        inv_pow = _pow_reciprocal(z, m + 1)
        if inv_pow == 0:
            continue
        term = inv_pow / horner(dcoeffs, z)
        re_parts.append(term.real)
        im_parts.append(term.imag)

    value = math.fsum(re_parts)
    resid = abs(math.fsum(im_parts))
    if resid > 1e-8 * max(1.0, abs(value)):
        raise ArithmeticError(
            f"imaginary residue {resid:.3e} too large at theta={theta}, m={m}"
        )
    return value, roots


def eval_R(params: FamilyParams, theta: float, m: int) -> float:
    """The oscillation value R_m(theta) = sum_k 1/(zeta_k**(m+1) Q'(zeta_k)).

    The boundary-pair contribution is the closed form
    2*(A*cos((m+r)theta) - B*sin((m+r)theta)) / (A**2 + B**2), which stays
    exact however close the pair gets to merging; off-circle terms are summed
    directly (dead terms with |zeta|**(m+1) beyond double range are dropped),
    and a colliding pair is replaced by its exact limit, so the value is
    continuous across the double-root parameter.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    value, _ = _eval_r_terms(params, theta, m)
    return value


def eval_R_cubic(params: FamilyParams, theta: float, m: int) -> float:
    """Closed-form R_m(theta) for max(n, r) = 3, as an independent oracle.

    The third root zeta2 comes from the coefficients alone (the root product
    is -a0/a3 and the boundary pair multiplies to 1), no iteration involved:

        R_m = [ (zeta2 - cos th) * sin((m+1)th)/sin th - cos((m+1)th)
                + zeta2**-(m+1) ] / (a3 * (zeta2**2 - 2*zeta2*cos th + 1))

    The denominator factor is |e^{i th} - zeta2|**2 > 0 times the leading
    coefficient, which aligns the value (not merely the zero set) with
    ``eval_R``.
    """
    if params.max_nr != 3:
        raise WrongDegree(f"need max(n, r) = 3, got {params.max_nr}")
    if m < 0:
        raise ValueError("m must be >= 0")
    _check_domain(params, theta)
    coeffs = build_q(params, theta)
    a0, a3 = coeffs[0], coeffs[3]
    zeta2 = -a0 / a3
    ct = math.cos(theta)
    s_fac = zeta2 * zeta2 - 2.0 * zeta2 * ct + 1.0
    if (m + 1) * math.log(abs(zeta2)) > 690.0:
        tail = 0.0
    else:
        tail = zeta2 ** (-(m + 1))
    core = (
        (zeta2 - ct) * math.sin((m + 1) * theta) / math.sin(theta)
        - math.cos((m + 1) * theta)
        + tail
    )
    return core / (a3 * s_fac)


def sign_grid(params: FamilyParams, m: int) -> List[float]:
    """The probe angles h*pi/(m+r), h = 1..floor(m/r), inside (0, pi/r)."""
    top = math.pi / params.r
    return [
        h * math.pi / (m + params.r)
        for h in range(1, m // params.r + 1)
        if h * math.pi / (m + params.r) < top
    ]


def find_R_roots(
    params: FamilyParams, m: int, width: float = 1e-12
) -> List[float]:
    """All zeros of R_m in (0, pi/r), located by sign changes on the grid.

    Signs are read at the probe angles h*pi/(m+r) and one terminal probe just
    inside pi/r; each change is refined by bisection to the given width.  The
    grid is the set of angles where the boundary-pair cosine peaks, which is
    exactly where the sign alternation is guaranteed, so for large m this
    recovers all floor(m/r) zeros.

    When r does not divide m the value at the boundary tends to zero and the
    innermost probe can read as noise; the probe then retreats to pi/r - 1e-7,
    still far closer to the boundary than any zero can sit (zeros keep a
    distance of order 1/(m+r)).
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    grid = sign_grid(params, m)
    if not grid:
        return []
    top = math.pi / params.r
    seeds: Sequence[complex] = ()
    probes = list(grid)
    values = []
    for theta in probes:
        v, seeds = _eval_r_terms(params, theta, m, seeds=seeds)
        values.append(v)
    v_fine, seeds = _eval_r_terms(params, top - 1e-9, m, seeds=seeds)
    v_coarse, _ = _eval_r_terms(params, top - 1e-7, m, seeds=seeds)
    if abs(v_fine) > 1e-12 and (v_fine > 0) == (v_coarse > 0):
        probes.append(top - 1e-9)
        values.append(v_fine)
    else:
        probes.append(top - 1e-7)
        values.append(v_coarse)
    roots = []
    for (ta, va), (tb, vb) in zip(
        zip(probes, values), zip(probes[1:], values[1:])
    ):
        if va == 0.0:
            roots.append(ta)
            continue
        if va * vb >= 0.0:
            continue
        lo, f_lo, hi = ta, va, tb
        seeds_b: Sequence[complex] = ()
        while hi - lo > width:
            mid = 0.5 * (lo + hi)
            f_mid, seeds_b = _eval_r_terms(params, mid, m, seeds=seeds_b)
            if f_mid == 0.0:
                lo = hi = mid
                break
            if (f_mid > 0) == (f_lo > 0):
                lo, f_lo = mid, f_mid
            else:
                hi = mid
        roots.append(0.5 * (lo + hi))
    if values and values[-1] == 0.0:
        roots.append(probes[-1])
    return sorted(roots)
