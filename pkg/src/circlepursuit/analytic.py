"""Closed-form results for two, three and four bugs."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Literal

import numpy as np

from .dynamics import TWO_PI, wrap_angle

PI = math.pi

PhaseRegion = Literal[
    "cycle_ccw", "cycle_cw", "coalesce", "groups_point", "unstable_cycle_line"
]

_EXACT = {2: Fraction(0), 3: Fraction(1, 4), 4: Fraction(1, 3)}


class DegenerateConfiguration(ValueError):
    """Raised for measure-zero inputs (coincident or antipodal bugs)."""


def exact_cycle_probability(n: int) -> Fraction:
    """Probability that ``n`` uniformly placed bugs end up cycling, for n <= 4."""
    try:
        return _EXACT[n]
    except KeyError:
        raise ValueError(f"no closed form for n={n}; only n in {{2, 3, 4}}") from None


def stability_probability_3(alpha: float) -> float:
    """Cycle probability for three bugs perturbed from the groups point (pi, pi).

    Both gaps are shifted by independent uniform amounts in ``(-alpha, alpha)``;
    the result is the cycling share of that square of side ``2*alpha``.
    """
    if not 0 < alpha <= PI:
        raise ValueError(f"alpha must lie in (0, pi], got {alpha}")
    if alpha <= PI / 2:
        return 0.5
    q = PI / alpha
    return 0.25 * (-q * q + 4 * q - 2)


def classify_3(omega1: float, omega2: float, tol: float = 1e-9) -> PhaseRegion:
    """Region of the three-bug phase plane ``(omega1, omega2)``.

    The cycling triangles are ``omega1, omega2 in (0, pi)`` with
    ``omega1 + omega2 > pi`` (counterclockwise) and its mirror image
    ``omega1, omega2 in (pi, 2pi)`` with ``omega1 + omega2 < 3pi`` (clockwise).
    """
    w1, w2 = wrap_angle(omega1), wrap_angle(omega2)

    def near(x, y):
        return abs(x - y) < tol or abs(abs(x - y) - TWO_PI) < tol

    on1, on2 = near(w1, PI), near(w2, PI)
    zero1, zero2 = near(w1, 0.0), near(w2, 0.0)
    if (on1 and (on2 or zero2)) or (zero1 and on2):
        return "groups_point"
    if on1 or on2:
        return "unstable_cycle_line"
    if zero1 or zero2:
        return "coalesce"
    s = w1 + w2
    if w1 < PI and w2 < PI and s > PI + tol:
        return "cycle_ccw"
    if w1 > PI and w2 > PI and s < 3 * PI - tol:
        return "cycle_cw"
    return "coalesce"


def _cycle_mask_upper(t2, t3, t4):
    """Cycle indicator for bug 1 at 0 and ``t2`` in (0, pi); broadcasts."""
    in_band = (t4 > PI) & (t4 < t3 + PI)
    return (
        ((t3 > 0) & (t3 < t2) & in_band)
        | ((t3 > t2) & (t3 < PI) & in_band)
        # (pi, t3 + pi) runs past 2pi here and wraps back to (0, t3 - pi)
        | ((t3 > PI) & (t3 < t2 + PI) & ((t4 > PI) | (t4 < t3 - PI)))
        | ((t3 > t2 + PI) & (t4 > t3 - PI) & (t4 < PI))
    )


def classify_4(
    theta2: float, theta3: float, theta4: float, tol: float = 1e-9
) -> Literal["cycle", "coalesce"]:
    """Eventual steady state of four bugs with bug 1 at angle 0.

    Measure-zero inputs on a region boundary raise
    :class:`DegenerateConfiguration`: two bugs coincident, a bug antipodal
    to its target, or bugs 1 and 3 antipodal. Bugs 2 and 4 may be antipodal.
    """
    th = np.array([0.0, theta2, theta3, theta4], dtype=float)
    th[1:] = wrap_angle(th[1:])
    full = np.mod(th[:, None] - th[None, :], TWO_PI)[np.triu_indices(4, 1)]
    half = np.mod(th[[1, 2, 3, 0, 2]] - th[[0, 1, 2, 3, 0]], TWO_PI)
    if np.any((full < tol) | (full > TWO_PI - tol)) or np.any(np.abs(half - PI) < tol):
        raise DegenerateConfiguration(
            f"degenerate four-bug configuration {tuple(th[1:])}"
        )
    t2, t3, t4 = th[1:]
    if t2 > PI:
        # mirror theta -> 2pi - theta swaps the cw and ccw pictures
        t2, t3, t4 = TWO_PI - t2, TWO_PI - t3, TWO_PI - t4
    return "cycle" if bool(_cycle_mask_upper(t2, t3, t4)) else "coalesce"


def four_bug_probability_by_quadrature(resolution: int = 512, half: bool = False) -> float:
    """Midpoint-rule estimate of the four-bug cycle probability.

    Integrates the cycle indicator over ``theta2 in (0, pi)`` and
    ``theta3, theta4 in (0, 2pi)`` on a ``resolution**3`` grid. With
    ``half=True`` returns that half-space probability (exact value 1/6);
    otherwise doubles it by mirror symmetry (exact value 1/3). The error
    shrinks like ``1/resolution``.
    """
    if resolution < 64:
        raise ValueError("resolution must be >= 64")
    h2 = PI / resolution
    h = TWO_PI / resolution
    t3 = ((np.arange(resolution) + 0.5) * h)[:, None]
    t4 = ((np.arange(resolution) + 0.5) * h)[None, :]
    hits = 0
    for i in range(resolution):
        hits += int(np.count_nonzero(_cycle_mask_upper((i + 0.5) * h2, t3, t4)))
    p_half = hits * h2 * h * h / TWO_PI**3
    return p_half if half else 2 * p_half
