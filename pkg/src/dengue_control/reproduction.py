"""Basic reproduction number at the disease-free equilibrium.

Two independent routes are provided and tested against each other:

* ``r0_spectral`` builds the next-generation matrix from the linearized
  new-infection and transition operators of the infected subsystem
  (E_h, I_h, E_m, I_m) and takes its spectral radius numerically;
* ``r0_closed_form`` evaluates the closed-form expression

      R0^2 = B^2 k beta_hm beta_mh eta_m nu_h M
             / (mu_b (eta_h+mu_h) mu_m (c+mu_m) (c+eta_m+mu_m) (mu_h+nu_h))

  with M the mosquito viability margin.

Both are evaluated at the disease-free point S_h = N_h,
S_m = k*N_h*M/(mu_b*mu_m); the closed form above is exactly the spectral
radius at that point.  R0 itself (not its square) is the canonical return
value; a free-state reproduction number is deliberately not exposed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import MosquitoCollapseError
from .model import ControlLevel, ModelParams, as_control, mosquito_viability
from .stability import eigenvalues


@dataclass(frozen=True)
class NgmDecomposition:
    """New-infection Jacobian, transition Jacobian, and their NGM product,
    all in the infected-subsystem order (E_h, I_h, E_m, I_m).

    ``j_v`` is lower triangular with positive diagonal (hence invertible by
    forward substitution); ``j_f`` has exactly two nonzero entries (the two
    cross-species infection terms); every entry of ``ngm`` is nonnegative.
    """

    j_f: np.ndarray
    j_v: np.ndarray
    ngm: np.ndarray


def _dfe_point(p: ModelParams, ctrl: ControlLevel) -> tuple[float, float]:
    """(S_h, S_m) at the mosquito-bearing disease-free equilibrium; raises
    if the vector population is not viable."""
    viability = mosquito_viability(p, ctrl)
    if viability <= 0.0:
        raise MosquitoCollapseError(
            "no mosquito-bearing disease-free equilibrium to linearize at "
            f"(viability margin = {viability:.6g})")
    return p.N_h, p.k * p.N_h * viability / (p.mu_b * p.mu_m)


def build_ngm(p: ModelParams, c: ControlLevel | float = 0.0) -> NgmDecomposition:
    """Next-generation decomposition of the infected subsystem at the
    disease-free equilibrium."""
    ctrl = as_control(c)
    s_h, s_m = _dfe_point(p, ctrl)
    cc = ctrl.c

    j_f = np.zeros((4, 4), dtype=float)
    j_f[0, 3] = p.B * p.beta_mh * s_h / p.N_h
    j_f[2, 1] = p.B * p.beta_hm * s_m / p.N_h

    a = p.nu_h + p.mu_h
    b = p.eta_h + p.mu_h
    d = p.mu_m + p.eta_m + cc
    e = p.mu_m + cc
    j_v = np.array(
        (
            (a, 0.0, 0.0, 0.0),
            (-p.nu_h, b, 0.0, 0.0),
            (0.0, 0.0, d, 0.0),
            (0.0, 0.0, -p.eta_m, e),
        ),
        dtype=float,
    )
    # Analytic inverse of the lower-triangular transition Jacobian.
    j_v_inv = np.array(
        (
            (1.0 / a, 0.0, 0.0, 0.0),
            (p.nu_h / (a * b), 1.0 / b, 0.0, 0.0),
            (0.0, 0.0, 1.0 / d, 0.0),
            (0.0, 0.0, p.eta_m / (d * e), 1.0 / e),
        ),
        dtype=float,
    )
    return NgmDecomposition(j_f=j_f, j_v=j_v, ngm=j_f @ j_v_inv)


def r0_spectral(p: ModelParams, c: ControlLevel | float = 0.0) -> float:
    """Spectral radius of the next-generation matrix.

    The NGM has a two-cycle structure (humans infect mosquitoes infect
    humans), so its spectral radius is the square root of the product of
    the two transmission chains; it is computed here from the full 4x4
    matrix, not from that shortcut, so it can cross-check the closed form.
    """
    ngm = build_ngm(p, c).ngm
    return max(abs(v) for v in eigenvalues(ngm))


def r0_closed_form(p: ModelParams, c: ControlLevel | float = 0.0) -> float:
    """Closed-form basic reproduction number (see module docstring)."""
    ctrl = as_control(c)
    viability = mosquito_viability(p, ctrl)
    if viability <= 0.0:
        raise MosquitoCollapseError(
            "basic reproduction number undefined: mosquito population "
            f"collapses (viability margin = {viability:.6g})")
    cc = ctrl.c
    r0_sq = (
        p.B ** 2 * p.k * p.beta_hm * p.beta_mh * p.eta_m * p.nu_h * viability
        / (p.mu_b * (p.eta_h + p.mu_h) * p.mu_m * (cc + p.mu_m)
           * (cc + p.eta_m + p.mu_m) * (p.mu_h + p.nu_h))
    )
    return math.sqrt(r0_sq)


def r0_factors(p: ModelParams, c: ControlLevel | float = 0.0) -> tuple[float, float]:
    """Two-factor split R0^2 = R_hm * R_mh at the disease-free equilibrium.

    R_hm (human -> mosquito) bundles the bite rate against susceptible
    mosquitoes per human, the viraemic period 1/(eta_h+mu_h), and the
    fraction of humans surviving incubation nu_h/(mu_h+nu_h).  R_mh
    (mosquito -> human) bundles the bite rate against susceptible humans,
    the controlled mosquito lifespan 1/(c+mu_m), and the fraction of
    mosquitoes surviving incubation eta_m/(c+eta_m+mu_m).
    """
    ctrl = as_control(c)
    s_h, s_m = _dfe_point(p, ctrl)
    cc = ctrl.c
    r_hm = (p.B * s_m * p.beta_hm * p.nu_h
            / (p.N_h * (p.eta_h + p.mu_h) * (p.mu_h + p.nu_h)))
    r_mh = (p.B * s_h * p.beta_mh * p.eta_m
            / (p.N_h * (cc + p.mu_m) * (cc + p.eta_m + p.mu_m)))
    return r_hm, r_mh
