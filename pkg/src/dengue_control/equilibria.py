"""Fixed points of the host-vector system: closed forms and Newton refinement.

Three equilibria matter:

* the trivial (mosquito-free) equilibrium (N_h, 0, ..., 0), a fixed point
  for every control level;
* the mosquito-bearing disease-free equilibrium, which exists when the
  vector viability margin is positive;
* an endemic interior equilibrium, which exists when additionally the
  basic reproduction number exceeds one.

Both nontrivial equilibria have closed forms, written out in their
constructors.  The disease-free form uses the zero-control adult balance
(eta_A*A*/mu_m), so for c > 0 it is not an exact fixed point of the
controlled flow; it is nevertheless the declared evaluation point of the
reproduction-number machinery.  Nothing is silently "fixed": every
constructed equilibrium records its honest relative residual and the
Newton-refined root is the authoritative endemic value.

A practical consequence of the zero-control balance: the existence window
"R0 > 1" for the endemic equilibrium is wider than the window where the
interior root actually has positive components.  On the built-in case
study the refined root stays positive only for controls below about 0.08
per day, while R0 crosses one near 0.157; between the two the interior
root carries a negative infected-human component and sits outside the
admissible region.  Callers that need a biologically meaningful endemic
state should check region membership on the result.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import MosquitoCollapseError, NoEndemicEquilibrium, NumericalFailure
from .model import (
    ControlLevel,
    ModelParams,
    State7,
    as_control,
    component_scales,
    mosquito_viability,
    _jacobian_array,
    _rhs_array,
)

#: Relative residual (max over components, scaled by the natural
#: compartment magnitudes) below which Newton refinement declares a root.
REFINE_TOL = 1e-10

_MAX_NEWTON_ITERATIONS = 100
_MAX_DAMPING_HALVINGS = 30


class EquilibriumKind(enum.Enum):
    TRIVIAL = "trivial"
    BRDFE = "brdfe"          # mosquitoes persist, disease absent
    ENDEMIC = "endemic"


@dataclass(frozen=True)
class Equilibrium:
    """A classified fixed-point candidate with its measured residual."""

    kind: EquilibriumKind
    state: State7
    residual_norm: float
    refined: bool = False


def residual(p: ModelParams, c: ControlLevel | float, x: State7) -> float:
    """max_i |rhs_i(x)| / scale_i with the integrator's component scales."""
    r = _rhs_array(p, as_control(c).c, x.as_array())
    return float(np.max(np.abs(r) / component_scales(p)))


def trivial_equilibrium(p: ModelParams) -> Equilibrium:
    """Mosquito-free, disease-free state (N_h, 0, ..., 0).

    A fixed point for every control level: with no mosquitoes there is
    nothing for the adulticide to act on, and the human balance closes at
    S_h = N_h.
    """
    state = State7(p.N_h, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    return Equilibrium(kind=EquilibriumKind.TRIVIAL, state=state,
                       residual_norm=residual(p, 0.0, state))


def brdfe(p: ModelParams, c: ControlLevel | float = 0.0) -> Equilibrium:
    """Disease-free state with a sustained mosquito population:

        (N_h, 0, 0, k*N_h*M/(eta_A*mu_b), k*N_h*M/(mu_b*mu_m), 0, 0)

    where M is the viability margin.  Requires M > 0; otherwise the vector
    population collapses and only the trivial equilibrium exists.

    The adult component uses the zero-control balance (denominator
    mu_b*mu_m), so for c > 0 the state is not an exact fixed point of the
    controlled flow; residual_norm records the mismatch.  This is, by
    construction, the evaluation point of the reproduction-number and
    control-threshold computations.
    """
    ctrl = as_control(c)
    viability = mosquito_viability(p, ctrl)
    if viability <= 0.0:
        raise MosquitoCollapseError(
            "mosquito population collapses; only trivial equilibrium exists "
            f"(viability margin = {viability:.6g})")
    kn = p.k * p.N_h
    state = State7(
        p.N_h, 0.0, 0.0,
        kn * viability / (p.eta_A * p.mu_b),
        kn * viability / (p.mu_b * p.mu_m),
        0.0, 0.0,
    )
    return Equilibrium(kind=EquilibriumKind.BRDFE, state=state,
                       residual_norm=residual(p, ctrl, state))


def endemic_closed_form(p: ModelParams, c: ControlLevel | float = 0.0) -> Equilibrium:
    """Closed-form endemic equilibrium, flagged unrefined.

    Requires a positive viability margin and basic reproduction number
    above one.  The infected-human level is xi/chi with the polynomial
    coefficients written out below; the remaining components follow from
    it.  Exact at c = 0; for c > 0 trust the recorded residual_norm and
    prefer ``refine`` on this output.  See the module docstring for the
    positivity window of the result under control.
    """
    from .reproduction import r0_closed_form

    ctrl = as_control(c)
    cc = ctrl.c
    viability = mosquito_viability(p, ctrl)
    if viability <= 0.0:
        raise NoEndemicEquilibrium(
            "no endemic equilibrium in the admissible region: mosquito "
            f"population collapses (viability margin = {viability:.6g})")
    r0 = r0_closed_form(p, ctrl)
    if r0 <= 1.0:
        raise NoEndemicEquilibrium(
            "no endemic equilibrium in the admissible region: basic "
            f"reproduction number {r0:.6g} <= 1")

    B, k, N_h = p.B, p.k, p.N_h
    mu_h, nu_h, eta_h = p.mu_h, p.nu_h, p.eta_h
    mu_m, eta_m, mu_b = p.mu_m, p.eta_m, p.mu_b
    bhm, bmh = p.beta_hm, p.beta_mh

    xi = N_h * mu_h * (
        -B * B * k * bhm * bmh * nu_h * eta_m * viability
        + mu_b * mu_m ** 2 * (eta_m + mu_m) * (mu_h + nu_h) * (mu_h + eta_h)
        + cc ** 2 * mu_b * (eta_h + mu_h) * (mu_h + nu_h) * (cc + eta_m + 3.0 * mu_m)
        + cc * mu_b * mu_m * (mu_h + nu_h)
        * (mu_h * (3.0 * mu_m + 2.0) + eta_h * (2.0 * eta_m + 3.0 * mu_m))
    )
    chi = (
        B * bhm * (eta_h + mu_h)
        * (-mu_b * mu_h * (cc + mu_m) * (cc + eta_m + mu_m)
           - B * k * bmh * eta_m * viability)
        * (mu_h + nu_h)
    )
    i_h = xi / chi

    s_h = N_h - (mu_h + nu_h) * (mu_h + eta_h) / (mu_h * nu_h) * i_h
    e_h = (mu_h + eta_h) / nu_h * i_h
    a_m = viability / (p.eta_A * mu_b) * k * N_h
    denom = cc * N_h + B * i_h * bhm + N_h * mu_m
    s_m = k * N_h ** 2 * viability / (mu_b * denom)
    i_m = (B * i_h * k * N_h * bhm * eta_m * viability
           / (mu_b * (cc + mu_m) * (cc + eta_m + mu_m) * denom))
    e_m = (mu_m + cc) / eta_m * i_m

    state = State7(s_h, e_h, i_h, a_m, s_m, e_m, i_m)
    return Equilibrium(kind=EquilibriumKind.ENDEMIC, state=state,
                       residual_norm=residual(p, ctrl, state), refined=False)


def _classify_root(p: ModelParams, x: np.ndarray) -> EquilibriumKind:
    scales = component_scales(p)
    infected = max(abs(x[1]) / scales[1], abs(x[2]) / scales[2],
                   abs(x[5]) / scales[5], abs(x[6]) / scales[6])
    if infected > 1e-8:
        return EquilibriumKind.ENDEMIC
    if abs(x[3]) / scales[3] > 1e-8 or abs(x[4]) / scales[4] > 1e-8:
        return EquilibriumKind.BRDFE
    return EquilibriumKind.TRIVIAL


def refine(p: ModelParams, c: ControlLevel | float, guess: State7) -> Equilibrium:
    """Damped Newton iteration on rhs = 0 starting from ``guess``.

    The step is halved (up to 30 times) until the scaled residual
    decreases; convergence is declared below REFINE_TOL.  Raises
    NumericalFailure, carrying the last residual, after 100 iterations
    without convergence or on a singular Jacobian.
    """
    if not guess.is_finite():
        raise ValueError("refinement guess contains non-finite components")
    cc = as_control(c).c
    scales = component_scales(p)

    def scaled_residual(y: np.ndarray) -> tuple[np.ndarray, float]:
        r = _rhs_array(p, cc, y)
        return r, float(np.max(np.abs(r) / scales))

    x = guess.as_array()
    r, res = scaled_residual(x)
    for _ in range(_MAX_NEWTON_ITERATIONS):
        if res < REFINE_TOL:
            return Equilibrium(kind=_classify_root(p, x), state=State7.from_array(x),
                               residual_norm=res, refined=True)
        jac = _jacobian_array(p, cc, x)
        try:
            step = np.linalg.solve(jac, -r)
        except np.linalg.LinAlgError as exc:
            raise NumericalFailure(
                f"singular Jacobian during refinement (residual {res:.3e})",
                residual=res) from exc
        lam = 1.0
        for _ in range(_MAX_DAMPING_HALVINGS):
            x_new = x + lam * step
            r_new, res_new = scaled_residual(x_new)
            if np.all(np.isfinite(r_new)) and res_new < res:
                break
            lam *= 0.5
        else:
            raise NumericalFailure(
                f"refinement stalled: damping exhausted at residual {res:.3e}",
                residual=res)
        x, r, res = x_new, r_new, res_new
    raise NumericalFailure(
        f"refinement did not converge in {_MAX_NEWTON_ITERATIONS} iterations "
        f"(last residual {res:.3e})", residual=res)


def refined_endemic(p: ModelParams, c: ControlLevel | float = 0.0) -> Equilibrium:
    """Endemic equilibrium with the closed form as guess and Newton polish.

    The refined root is the authoritative value; the closed form is kept
    as the starting point and cross-check.
    """
    eq = refine(p, c, endemic_closed_form(p, c).state)
    if eq.kind is not EquilibriumKind.ENDEMIC:
        raise NoEndemicEquilibrium(
            "refinement of the endemic closed form collapsed to a "
            f"disease-free state ({eq.kind.value})")
    return eq
