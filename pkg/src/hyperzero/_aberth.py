"""Simultaneous (Aberth-style) complex root finding for small dense polynomials.

Degrees here are tiny (at most max{n, r}), but the coefficient profiles get
extreme near the domain boundary: leading coefficients can shrink by dozens
of orders of magnitude, pushing roots out to 1e30 and beyond.  The finder
therefore

* trims leading coefficients only when the escaping roots would overflow
  double-precision Horner evaluation (the trimmed roots are effectively at
  infinity for every downstream use),
* places initial guesses on the Newton-polygon radii of the coefficient
  profile, so widely separated root magnitudes each get a guess at the
  right scale (a single circle strands guesses orders of magnitude from
  any root),
* measures convergence by relative root updates and by the backward-error
  residual |p(z)| / sum |a_j||z|**j, which stays honest at huge |z| where
  naive scaled residuals go blind.
"""

from __future__ import annotations

import cmath
import math
from typing import List, Optional, Sequence, Tuple


class NoConvergence(ArithmeticError):
    """The simultaneous iteration failed to settle within the iteration cap."""


def horner(coeffs: Sequence, z: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _backward_error(coeffs: Sequence[float], z: complex, pz: complex) -> float:
    az = abs(z)
    denom = 0.0
    power = 1.0
    for c in coeffs:
        denom += abs(c) * power
        power *= az
    return abs(pz) / denom if denom > 0 else abs(pz)


def trim_for_overflow(coeffs: Sequence[float]) -> list:
    """Drop leading coefficients whose roots would overflow Horner in doubles.

    Returns a copy trimmed so that the largest root magnitude estimate R
    satisfies R**degree < ~1e280.  Exactly-zero leads are always dropped.
    """
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    while len(c) > 1:
        d = len(c) - 1
        log_lead = math.log10(abs(c[-1]))
        log_top = max(
            (math.log10(abs(c[j])) - log_lead) / (d - j)
            for j in range(d)
            if c[j] != 0
        )
        if log_top * d < 280:
            break
        c.pop()
        while c and c[-1] == 0:
            c.pop()
    return c


def _newton_polygon_radii(coeffs: Sequence[float]) -> List[float]:
    """One starting modulus per root, from the coefficient Newton polygon.

    Upper convex hull of (j, log|a_j|); a hull segment from j1 to j2 yields
    j2 - j1 roots of modulus about (|a_j1|/|a_j2|)**(1/(j2-j1)).
    """
    pts = [
        (j, math.log(abs(c))) for j, c in enumerate(coeffs) if c != 0
    ]
    hull: List[Tuple[int, float]] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] unless it is strictly above chord hull[-2]..p
            if (y2 - y1) * (p[0] - x1) > (p[1] - y1) * (x2 - x1):
                break
            hull.pop()
        hull.append(p)
    radii: List[float] = []
    for (j1, l1), (j2, l2) in zip(hull, hull[1:]):
        u = math.exp((l1 - l2) / (j2 - j1))
        radii.extend([max(u, 1e-12)] * (j2 - j1))
    radii.sort()
    return radii


def aberth_roots(
    coeffs: Sequence[float],
    seeds: Sequence[complex] = (),
    frozen: int = 0,
    max_iter: int = 200,
    update_tol: float = 1e-13,
) -> list:
    """All complex roots of the (trimmed) polynomial with real coefficients.

    ``seeds`` are used verbatim as initial guesses for the first roots; each
    seed displaces the Newton-polygon starting modulus nearest to it, and the
    remaining guesses spread in angle on their polygon radii.

    The first ``frozen`` seeds are known exact roots: they are never moved,
    only repelled against (implicit deflation).  Blind iteration would smear
    such roots by their cluster conditioning, which near the domain ends is
    far worse than the backward-error floor.  Converged free roots get a
    final Newton polish.
    """
    c = trim_for_overflow(coeffs)
    d = len(c) - 1
    if d < 1:
        return []
    dc = [i * c[i] for i in range(1, len(c))]
    frozen = min(frozen, len(seeds), d)

    z = [complex(s) for s in seeds[:d]]
    radii = _newton_polygon_radii(c)
    for zi in z:
        k = min(range(len(radii)), key=lambda i: abs(radii[i] - abs(zi)))
        radii.pop(k)
    for k, radius in enumerate(radii):
        ang = 2.0 * math.pi * k / max(1, len(radii)) + 0.4
        z.append(radius * cmath.exp(1j * ang))

    converged = d == frozen
    for _ in range(max_iter):
        if converged:
            break
        max_rel = 0.0
        max_res = 0.0
        for i in range(frozen, d):
            zi = z[i]
            p = horner(c, zi)
            max_res = max(max_res, _backward_error(c, zi, p))
            if p == 0:
                continue
            dp = horner(dc, zi)
            if dp == 0:
                z[i] = zi * 1.000001 + 1e-6  # nudge off a stationary point
                max_rel = 1.0
                continue
            newton = p / dp
            repel = 0j
            for j in range(d):
                if j != i:
                    dz = zi - z[j]
                    if dz != 0:
                        repel += 1.0 / dz
            denom = 1.0 - newton * repel
            w = newton if denom == 0 else newton / denom
            z[i] = zi - w
            max_rel = max(max_rel, abs(w) / max(1.0, abs(z[i])))
        if max_rel < update_tol or max_res < 1e-14:
            converged = True
    worst = max(_backward_error(c, zi, horner(c, zi)) for zi in z)
    if not converged and worst > 1e-10:
        raise NoConvergence(
            f"root iteration stalled after {max_iter} iterations "
            f"(worst backward error {worst:.3e})"
        )
    if converged and worst > 1e-8:
        raise NoConvergence(
            f"a supplied root fails its backward-error check ({worst:.3e})"
        )

    # Newton polish; skipped where the derivative has collapsed (paired roots)
    for i in range(frozen, d):
        for _ in range(2):
            p = horner(c, z[i])
            dp = horner(dc, z[i])
            if dp == 0:
                break
            step = p / dp
            if abs(step) > 1e-2 * max(1.0, abs(z[i])):
                break
            z[i] -= step
    return z
