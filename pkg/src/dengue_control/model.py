"""Host-vector dengue dynamics with constant adulticide control.

Humans move through susceptible/exposed/infected compartments (S_h, E_h,
I_h); the recovered class R_h is eliminated using the constant-population
identity R_h = N_h - S_h - E_h - I_h, leaving a 7-dimensional state.  The
mosquito population has an aquatic stage A_m (eggs, larvae, pupae) with
logistic recruitment, and adult females in S_m, E_m, I_m.  The adulticide
removes adults of every class at rate ``c`` and leaves the aquatic stage
untouched.

The reduced system, in the fixed component order
(S_h, E_h, I_h, A_m, S_m, E_m, I_m):

    dS_h/dt = mu_h*N_h - (B*beta_mh*I_m/N_h + mu_h)*S_h
    dE_h/dt = B*beta_mh*(I_m/N_h)*S_h - (nu_h + mu_h)*E_h
    dI_h/dt = nu_h*E_h - (eta_h + mu_h)*I_h
    dA_m/dt = mu_b*(1 - A_m/K)*(S_m + E_m + I_m) - (eta_A + mu_A)*A_m
    dS_m/dt = -(B*beta_hm*I_h/N_h + mu_m + c)*S_m + eta_A*A_m
    dE_m/dt = B*beta_hm*(I_h/N_h)*S_m - (mu_m + eta_m + c)*E_m
    dI_m/dt = eta_m*E_m - (mu_m + c)*I_m

The system also admits the Metzler form dX/dt = M(X)X + F with F =
(mu_h*N_h, 0, ..., 0) and M(X) having nonnegative off-diagonal entries on
the biologically admissible region, which is what keeps trajectories in
the nonnegative orthant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

#: Component order used by every array-facing routine in the package.
STATE_LABELS = ("S_h", "E_h", "I_h", "A_m", "S_m", "E_m", "I_m")


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class ModelParams:
    """Epidemiological and entomological rates.

    N_h      total human population (persons)
    B        average daily bites per mosquito (1/day)
    beta_mh  transmission probability per bite, mosquito -> human
    beta_hm  transmission probability per bite, human -> mosquito
    mu_h     human mortality rate (1/day, = 1/average lifespan)
    eta_h    human recovery rate (1/day, = 1/viraemic period)
    mu_m     adult mosquito mortality rate (1/day)
    mu_b     eggs laid per adult female per day; zero models a
             non-recruiting (collapsing) vector population
    mu_A     aquatic-stage mortality rate (1/day)
    eta_A    maturation rate, aquatic -> adult (1/day)
    eta_m    1/extrinsic incubation period (1/day)
    nu_h     1/intrinsic incubation period (1/day)
    m        adult female mosquitoes per human
    k        aquatic individuals per human
    K        aquatic carrying capacity (count)
    """

    N_h: float
    B: float
    beta_mh: float
    beta_hm: float
    mu_h: float
    eta_h: float
    mu_m: float
    mu_b: float
    mu_A: float
    eta_A: float
    eta_m: float
    nu_h: float
    m: float
    k: float
    K: float

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, _require_finite(f.name, getattr(self, f.name)))
        for name in ("B", "mu_h", "eta_h", "mu_m", "mu_A", "eta_A", "eta_m", "nu_h", "m", "k"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")
        if self.mu_b < 0.0:
            raise ValueError(f"mu_b must be >= 0, got {self.mu_b}")
        for name in ("beta_mh", "beta_hm"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {getattr(self, name)}")
        if self.N_h <= 0.0:
            raise ValueError(f"N_h must be > 0, got {self.N_h}")
        if self.K <= 0.0:
            raise ValueError(f"K must be > 0, got {self.K}")


@dataclass(frozen=True)
class ControlLevel:
    """Constant adulticide-induced removal rate c (1/day), c >= 0."""

    c: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "c", _require_finite("c", self.c))
        if self.c < 0.0:
            raise ValueError(f"c must be >= 0, got {self.c}")


def as_control(c: ControlLevel | float) -> ControlLevel:
    """Normalize a bare rate into a validated ControlLevel."""
    return c if isinstance(c, ControlLevel) else ControlLevel(float(c))


@dataclass(frozen=True)
class State7:
    """Reduced state: humans (S_h, E_h, I_h) and mosquitoes (A_m, S_m, E_m, I_m)."""

    S_h: float
    E_h: float
    I_h: float
    A_m: float
    S_m: float
    E_m: float
    I_m: float

    def as_array(self) -> np.ndarray:
        return np.array(
            (self.S_h, self.E_h, self.I_h, self.A_m, self.S_m, self.E_m, self.I_m),
            dtype=float,
        )

    @classmethod
    def from_array(cls, x) -> "State7":
        if len(x) != 7:
            raise ValueError(f"expected 7 components, got {len(x)}")
        return cls(*(float(v) for v in x))

    def is_finite(self) -> bool:
        return all(math.isfinite(v) for v in self.as_tuple())

    def as_tuple(self) -> tuple[float, ...]:
        return (self.S_h, self.E_h, self.I_h, self.A_m, self.S_m, self.E_m, self.I_m)


@dataclass(frozen=True)
class State8:
    """Full state including the derived recovered class R_h."""

    S_h: float
    E_h: float
    I_h: float
    R_h: float
    A_m: float
    S_m: float
    E_m: float
    I_m: float

    def as_tuple(self) -> tuple[float, ...]:
        return (self.S_h, self.E_h, self.I_h, self.R_h, self.A_m, self.S_m, self.E_m, self.I_m)

    def drop_rh(self) -> State7:
        return State7(self.S_h, self.E_h, self.I_h, self.A_m, self.S_m, self.E_m, self.I_m)


@dataclass(frozen=True)
class MetzlerForm:
    """Decomposition dX/dt = m_of_x @ X + inflow.

    Off-diagonal entries of ``m_of_x`` are nonnegative for states in the
    admissible region; ``inflow`` is the constant recruitment vector
    (mu_h*N_h, 0, ..., 0).
    """

    m_of_x: np.ndarray
    inflow: np.ndarray


def component_scales(p: ModelParams) -> np.ndarray:
    """Natural magnitude of each compartment: N_h for humans, k*N_h for the
    aquatic stage, m*N_h for adult mosquitoes.  Used for relative residuals
    and integrator error weights."""
    n, kn, mn = p.N_h, p.k * p.N_h, p.m * p.N_h
    return np.array((n, n, n, kn, mn, mn, mn), dtype=float)


def _rhs_array(p: ModelParams, c: float, x: np.ndarray) -> np.ndarray:
    """Derivative of the 7-dim state; hot path, no validation."""
    s_h = float(x[0]); e_h = float(x[1]); i_h = float(x[2])
    a_m = float(x[3]); s_m = float(x[4]); e_m = float(x[5]); i_m = float(x[6])

    foi_h = p.B * p.beta_mh * i_m / p.N_h      # mosquito -> human force of infection
    foi_m = p.B * p.beta_hm * i_h / p.N_h      # human -> mosquito force of infection
    adults = s_m + e_m + i_m

    return np.array(
        (
            p.mu_h * p.N_h - (foi_h + p.mu_h) * s_h,
            foi_h * s_h - (p.nu_h + p.mu_h) * e_h,
            p.nu_h * e_h - (p.eta_h + p.mu_h) * i_h,
            p.mu_b * (1.0 - a_m / p.K) * adults - (p.eta_A + p.mu_A) * a_m,
            -(foi_m + p.mu_m + c) * s_m + p.eta_A * a_m,
            foi_m * s_m - (p.mu_m + p.eta_m + c) * e_m,
            p.eta_m * e_m - (p.mu_m + c) * i_m,
        ),
        dtype=float,
    )


def rhs(p: ModelParams, c: ControlLevel | float, x: State7) -> State7:
    """Time derivative of the reduced system (units 1/day per compartment).

    The aquatic equation carries no control term: the adulticide does not
    act on eggs, larvae or pupae.
    """
    if not x.is_finite():
        raise ValueError("state contains non-finite components")
    return State7.from_array(_rhs_array(p, as_control(c).c, x.as_array()))


def reconstruct_rh(p: ModelParams, x: State7) -> State8:
    """Recover R_h = N_h - S_h - E_h - I_h.  A negative R_h is reported as
    is; it signals departure from the admissible region, not an error."""
    r_h = p.N_h - x.S_h - x.E_h - x.I_h
    return State8(x.S_h, x.E_h, x.I_h, r_h, x.A_m, x.S_m, x.E_m, x.I_m)


def mosquito_viability(p: ModelParams, c: ControlLevel | float = 0.0) -> float:
    """Viability margin of the vector population:

        eta_A*mu_b - c*(eta_A + mu_A) - mu_m*(mu_A + eta_A)

    Positive iff the mosquito population is sustainable under control c;
    at or below zero the population collapses and only the mosquito-free
    equilibrium remains.
    """
    cc = as_control(c).c
    return p.eta_A * p.mu_b - cc * (p.eta_A + p.mu_A) - p.mu_m * (p.mu_A + p.eta_A)


def basic_offspring_number(p: ModelParams, c: ControlLevel | float = 0.0) -> float:
    """Threshold ratio (eta_A + mu_A)*(mu_m + c) / (mu_b*eta_A).

    Below one exactly when the viability margin is positive.  Note the
    orientation: this is the ratio whose *smallness* means a sustainable
    population; the conventional "offspring number" is its reciprocal.
    The ratio is returned as written here; the naming mismatch is
    documented rather than resolved.
    """
    if p.mu_b == 0.0 or p.eta_A == 0.0:
        raise ValueError("basic offspring ratio undefined: mu_b and eta_A must be nonzero")
    cc = as_control(c).c
    return (p.eta_A + p.mu_A) * (p.mu_m + cc) / (p.mu_b * p.eta_A)


#: Additive slack, as a fraction of each bound, used by the region test to
#: absorb floating-point drift from integration.
OMEGA_SLACK = 1e-9


def in_omega(p: ModelParams, x: State7, slack: float = OMEGA_SLACK) -> bool:
    """Membership in the region of biological interest (closed, so boundary
    states count):

        all components >= 0,
        S_h + E_h + I_h <= N_h,
        A_m <= k*N_h,
        S_m + E_m + I_m <= m*N_h.

    Each inequality gets additive slack ``slack * bound``; the aquatic bound
    is k*N_h (not the carrying capacity K).  Non-finite states are outside.
    """
    if not x.is_finite():
        return False
    n_h, kn, mn = p.N_h, p.k * p.N_h, p.m * p.N_h
    lo = (
        x.S_h >= -slack * n_h
        and x.E_h >= -slack * n_h
        and x.I_h >= -slack * n_h
        and x.A_m >= -slack * kn
        and x.S_m >= -slack * mn
        and x.E_m >= -slack * mn
        and x.I_m >= -slack * mn
    )
    hi = (
        x.S_h + x.E_h + x.I_h <= n_h * (1.0 + slack)
        and x.A_m <= kn * (1.0 + slack)
        and x.S_m + x.E_m + x.I_m <= mn * (1.0 + slack)
    )
    return lo and hi


def metzler_decomposition(p: ModelParams, c: ControlLevel | float, x: State7) -> MetzlerForm:
    """State-dependent matrix form dX/dt = M(X)X + F.

    The state-dependence sits on the diagonal (force-of-infection and
    logistic-crowding terms), so every off-diagonal entry is nonnegative
    whenever the state is admissible.
    """
    cc = as_control(c).c
    foi_h = p.B * p.beta_mh * x.I_m / p.N_h
    foi_m = p.B * p.beta_hm * x.I_h / p.N_h
    adults = x.S_m + x.E_m + x.I_m

    mat = np.zeros((7, 7), dtype=float)
    mat[0, 0] = -foi_h - p.mu_h
    mat[1, 0] = foi_h
    mat[1, 1] = -(p.nu_h + p.mu_h)
    mat[2, 1] = p.nu_h
    mat[2, 2] = -(p.eta_h + p.mu_h)
    mat[3, 3] = -p.mu_b * adults / p.K - (p.eta_A + p.mu_A)
    mat[3, 4] = p.mu_b
    mat[3, 5] = p.mu_b
    mat[3, 6] = p.mu_b
    mat[4, 3] = p.eta_A
    mat[4, 4] = -foi_m - p.mu_m - cc
    mat[5, 4] = foi_m
    mat[5, 5] = -(p.mu_m + p.eta_m + cc)
    mat[6, 5] = p.eta_m
    mat[6, 6] = -(p.mu_m + cc)

    inflow = np.zeros(7, dtype=float)
    inflow[0] = p.mu_h * p.N_h
    return MetzlerForm(m_of_x=mat, inflow=inflow)


def _jacobian_array(p: ModelParams, c: float, x: np.ndarray) -> np.ndarray:
    """Analytic Jacobian of ``_rhs_array`` at x (7x7)."""
    s_h = float(x[0]); i_h = float(x[2])
    a_m = float(x[3]); s_m = float(x[4]); e_m = float(x[5]); i_m = float(x[6])

    foi_h = p.B * p.beta_mh * i_m / p.N_h
    foi_m = p.B * p.beta_hm * i_h / p.N_h
    adults = s_m + e_m + i_m
    crowding = p.mu_b * (1.0 - a_m / p.K)

    jac = np.zeros((7, 7), dtype=float)
    jac[0, 0] = -(foi_h + p.mu_h)
    jac[0, 6] = -p.B * p.beta_mh * s_h / p.N_h
    jac[1, 0] = foi_h
    jac[1, 1] = -(p.nu_h + p.mu_h)
    jac[1, 6] = p.B * p.beta_mh * s_h / p.N_h
    jac[2, 1] = p.nu_h
    jac[2, 2] = -(p.eta_h + p.mu_h)
    jac[3, 3] = -p.mu_b * adults / p.K - (p.eta_A + p.mu_A)
    jac[3, 4] = crowding
    jac[3, 5] = crowding
    jac[3, 6] = crowding
    jac[4, 2] = -p.B * p.beta_hm * s_m / p.N_h
    jac[4, 3] = p.eta_A
    jac[4, 4] = -(foi_m + p.mu_m + c)
    jac[5, 2] = p.B * p.beta_hm * s_m / p.N_h
    jac[5, 4] = foi_m
    jac[5, 5] = -(p.mu_m + p.eta_m + c)
    jac[6, 5] = p.eta_m
    jac[6, 6] = -(p.mu_m + c)
    return jac
