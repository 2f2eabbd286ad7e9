"""Minimum constant adulticide level keeping the reproduction number below one.

The reproduction number is strictly decreasing in the control rate and
drops to zero at the collapse bound

    c_collapse = eta_A*mu_b/(eta_A + mu_A) - mu_m

beyond which the mosquito population itself is not viable and no
reproduction number is defined.  ``min_control`` therefore bisects
R0(c) - 1 on [0, c_collapse): bisection is slower than Newton but gives an
unconditional bracketing certificate that is trivial to verify.  The
collapse bound is reported alongside the threshold since it caps how much
control is meaningful at all.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import ControlLevel, ModelParams, mosquito_viability
from .reproduction import r0_closed_form

#: Bisection keeps going until the reproduction number at the midpoint is
#: within this distance of one (on top of the requested c-tolerance).
R0_GAP = 1e-6

_MAX_BISECT_ITERATIONS = 200


@dataclass(frozen=True)
class ThresholdResult:
    """Certified root of R0(c) = 1."""

    c_star: float
    r0_at_c_star: float
    bracket: tuple[float, float]
    iterations: int
    collapse_bound: float


@dataclass(frozen=True)
class NoControlNeeded:
    """R0 is already below one with zero control (or the mosquito
    population collapses on its own, leaving nothing to transmit)."""

    r0_at_zero: float | None
    collapse_bound: float


@dataclass(frozen=True)
class Unattainable:
    """R0 stays above one on the whole viable control interval.

    Unreachable for this model family (R0 falls to zero at the collapse
    bound) but kept so callers can handle the full outcome set.
    """

    r0_range: tuple[float, float]
    collapse_bound: float


@dataclass(frozen=True)
class ProfilePoint:
    """One sweep entry; ``r0`` is None when the control level collapses
    the mosquito population."""

    c: float
    r0: float | None
    collapsed: bool


def collapse_control_bound(p: ModelParams) -> float:
    """Control level at which the mosquito viability margin hits zero."""
    return p.eta_A * p.mu_b / (p.eta_A + p.mu_A) - p.mu_m


def min_control(p: ModelParams, tol: float = 1e-6) -> ThresholdResult | NoControlNeeded | Unattainable:
    """Minimum constant control with R0 < 1, to within ``tol`` per day.

    Returns NoControlNeeded when R0(0) <= 1 and a certified bracket
    otherwise.  The returned bracket endpoints straddle R0 = 1 with
    opposite signs and the midpoint's R0 sits within R0_GAP of one.
    """
    if not tol > 0.0:
        raise ValueError(f"tolerance must be > 0, got {tol}")

    c_collapse = collapse_control_bound(p)
    if mosquito_viability(p, 0.0) <= 0.0:
        return NoControlNeeded(r0_at_zero=None, collapse_bound=c_collapse)

    def g(c: float) -> float:
        return r0_closed_form(p, c) - 1.0

    g_lo = g(0.0)
    if g_lo <= 0.0:
        return NoControlNeeded(r0_at_zero=g_lo + 1.0, collapse_bound=c_collapse)

    # Just inside the viable interval; R0 there is essentially zero.
    c_hi = c_collapse * (1.0 - 1e-12)
    g_hi = g(c_hi)
    if g_hi >= 0.0:
        return Unattainable(r0_range=(g_hi + 1.0, g_lo + 1.0),
                            collapse_bound=c_collapse)

    lo, hi = 0.0, c_hi
    iterations = 0
    for _ in range(_MAX_BISECT_ITERATIONS):
        mid = 0.5 * (lo + hi)
        g_mid = g(mid)
        iterations += 1
        if g_mid > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol and abs(g(0.5 * (lo + hi))) < R0_GAP:
            break
    c_star = 0.5 * (lo + hi)
    return ThresholdResult(
        c_star=c_star,
        r0_at_c_star=r0_closed_form(p, c_star),
        bracket=(lo, hi),
        iterations=iterations,
        collapse_bound=c_collapse,
    )


def r0_profile(p: ModelParams, grid) -> list[ProfilePoint]:
    """Pointwise R0 over a grid of control levels (all >= 0); levels at or
    beyond the collapse bound are flagged instead of given a value."""
    points = []
    for c in grid:
        ctrl = ControlLevel(float(c))
        if mosquito_viability(p, ctrl) <= 0.0:
            points.append(ProfilePoint(c=ctrl.c, r0=None, collapsed=True))
        else:
            points.append(ProfilePoint(c=ctrl.c, r0=r0_closed_form(p, ctrl), collapsed=False))
    return points
