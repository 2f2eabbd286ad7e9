"""Scenario files: flat ``key = value`` lines mapping 1:1 to model symbols.

Grammar: one ``key = value`` pair per line, ``#`` starts a comment, blank
lines ignored.  Keys are the romanized model symbols (N_h, B, beta_mh,
beta_hm, mu_h, eta_h, mu_m, mu_b, mu_A, eta_A, eta_m, nu_h, m, k, K, c),
initial-condition keys (S_h0, E_h0, I_h0, R_h0, A_m0, S_m0, E_m0, I_m0)
and solver keys (t0, t_end, rtol, atol, h_init, h_max, output_step).
The one-to-one mapping to the parameter table makes transcription errors
visible.

When S_h0 is omitted the human-total rule fills it in:
S_h0 = N_h - E_h0 - I_h0 - R_h0.  Supplying S_h0 explicitly disables the
rule.  K defaults to k*N_h, A_m0 to k*N_h, S_m0 to m*N_h.

The built-in ``capeverde2009`` scenario hard-codes the 2009 Cape Verde
outbreak values (population 480 000, one bite per mosquito per day,
transmission probabilities 0.375, adult mosquito lifespan 11 days, six
female mosquitoes and three larvae per human) with zero control.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import ScenarioError
from .integrator import SolverConfig
from .model import ControlLevel, ModelParams, State7, in_omega

_PARAM_KEYS = ("N_h", "B", "beta_mh", "beta_hm", "mu_h", "eta_h", "mu_m",
               "mu_b", "mu_A", "eta_A", "eta_m", "nu_h", "m", "k")
_INITIAL_KEYS = ("S_h0", "E_h0", "I_h0", "R_h0", "A_m0", "S_m0", "E_m0", "I_m0")
_SOLVER_KEYS = ("t0", "t_end", "rtol", "atol", "h_init", "h_max", "output_step")
KNOWN_KEYS = frozenset(_PARAM_KEYS + ("K", "c") + _INITIAL_KEYS + _SOLVER_KEYS)


@dataclass(frozen=True)
class Scenario:
    """Everything one run needs: parameters, control, start state, solver."""

    name: str
    params: ModelParams
    control: ControlLevel
    initial: State7
    solver: SolverConfig

    def with_control(self, c: float) -> "Scenario":
        return replace(self, control=ControlLevel(float(c)))

    def with_t_end(self, t_end: float) -> "Scenario":
        return replace(self, solver=replace(self.solver, t_end=float(t_end)))


def builtin_capeverde2009() -> Scenario:
    n_h = 480000.0
    params = ModelParams(
        N_h=n_h, B=1.0, beta_mh=0.375, beta_hm=0.375,
        mu_h=1.0 / (71.0 * 365.0), eta_h=1.0 / 3.0,
        mu_m=1.0 / 11.0, mu_b=6.0, mu_A=1.0 / 4.0, eta_A=0.08,
        eta_m=1.0 / 11.0, nu_h=1.0 / 4.0,
        m=6.0, k=3.0, K=3.0 * n_h,
    )
    e_h0, i_h0 = 216.0, 434.0
    initial = State7(
        S_h=n_h - e_h0 - i_h0, E_h=e_h0, I_h=i_h0,
        A_m=params.k * n_h, S_m=params.m * n_h, E_m=0.0, I_m=0.0,
    )
    return Scenario(name="capeverde2009", params=params,
                    control=ControlLevel(0.0), initial=initial,
                    solver=SolverConfig())


BUILTINS = {"capeverde2009": builtin_capeverde2009}


def get_builtin(name: str) -> Scenario:
    try:
        return BUILTINS[name]()
    except KeyError:
        raise ScenarioError(
            f"unknown builtin scenario {name!r}; available: "
            + ", ".join(sorted(BUILTINS))) from None


def _parse_pairs(text: str) -> dict[str, float]:
    values: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ScenarioError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, _, rhs = line.partition("=")
        key, rhs = key.strip(), rhs.strip()
        if key not in KNOWN_KEYS:
            raise ScenarioError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ScenarioError(f"line {lineno}: duplicate key {key!r}")
        try:
            values[key] = float(rhs)
        except ValueError:
            raise ScenarioError(
                f"line {lineno}: value for {key!r} is not a number: {rhs!r}") from None
    return values


def validate_initial(p: ModelParams, x0: State7) -> None:
    """Reject start states outside the admissible region, naming the
    violated bound."""
    for label, value in zip(("S_h0", "E_h0", "I_h0", "A_m0", "S_m0", "E_m0", "I_m0"),
                            x0.as_tuple()):
        if not value >= 0.0:
            raise ScenarioError(f"initial condition outside admissible region: "
                                f"{label} = {value!r} violates {label} >= 0")
    human = x0.S_h + x0.E_h + x0.I_h
    if human > p.N_h * (1.0 + 1e-12):
        raise ScenarioError(
            "initial condition outside admissible region: "
            f"S_h0+E_h0+I_h0 = {human!r} exceeds N_h = {p.N_h!r}")
    if x0.A_m > p.k * p.N_h * (1.0 + 1e-12):
        raise ScenarioError(
            "initial condition outside admissible region: "
            f"A_m0 = {x0.A_m!r} exceeds the aquatic bound k*N_h = {p.k * p.N_h!r}")
    adults = x0.S_m + x0.E_m + x0.I_m
    if adults > p.m * p.N_h * (1.0 + 1e-12):
        raise ScenarioError(
            "initial condition outside admissible region: "
            f"S_m0+E_m0+I_m0 = {adults!r} exceeds the adult bound m*N_h = {p.m * p.N_h!r}")
    if not in_omega(p, x0):
        raise ScenarioError("initial condition outside admissible region")


def parse_scenario(text: str, name: str = "custom") -> Scenario:
    values = _parse_pairs(text)

    missing = [key for key in _PARAM_KEYS if key not in values]
    if missing:
        raise ScenarioError("missing required parameter keys: " + ", ".join(missing))

    kwargs = {key: values[key] for key in _PARAM_KEYS}
    kwargs["K"] = values.get("K", values["k"] * values["N_h"])
    try:
        params = ModelParams(**kwargs)
    except ValueError as exc:
        raise ScenarioError(f"invalid parameter: {exc}") from exc

    try:
        control = ControlLevel(values.get("c", 0.0))
    except ValueError as exc:
        raise ScenarioError(f"invalid control level: {exc}") from exc

    e_h0 = values.get("E_h0", 0.0)
    i_h0 = values.get("I_h0", 0.0)
    r_h0 = values.get("R_h0", 0.0)
    s_h0 = values.get("S_h0", params.N_h - e_h0 - i_h0 - r_h0)
    initial = State7(
        S_h=s_h0, E_h=e_h0, I_h=i_h0,
        A_m=values.get("A_m0", params.k * params.N_h),
        S_m=values.get("S_m0", params.m * params.N_h),
        E_m=values.get("E_m0", 0.0),
        I_m=values.get("I_m0", 0.0),
    )
    validate_initial(params, initial)

    try:
        solver = SolverConfig(
            t0=values.get("t0", 0.0),
            t_end=values.get("t_end", 100.0),
            rtol=values.get("rtol", 1e-8),
            atol=values.get("atol", 1e-8),
            h_init=values.get("h_init", 1e-3),
            h_max=values.get("h_max", 1.0),
            output_step=values.get("output_step", 0.5),
        )
    except ValueError as exc:
        raise ScenarioError(f"invalid solver setting: {exc}") from exc

    return Scenario(name=name, params=params, control=control,
                    initial=initial, solver=solver)


def load_scenario(path) -> Scenario:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario file {path}: {exc}") from exc
    return parse_scenario(text, name=str(path))


def render_scenario(s: Scenario) -> str:
    """Serialize a scenario back to the flat key = value format (parsing
    the result reproduces the scenario)."""
    p, x0, cfg = s.params, s.initial, s.solver
    lines = [f"# scenario: {s.name}"]
    for key in _PARAM_KEYS:
        lines.append(f"{key} = {getattr(p, key)!r}")
    lines.append(f"K = {p.K!r}")
    lines.append(f"c = {s.control.c!r}")
    for key, value in (("S_h0", x0.S_h), ("E_h0", x0.E_h), ("I_h0", x0.I_h),
                       ("A_m0", x0.A_m), ("S_m0", x0.S_m), ("E_m0", x0.E_m),
                       ("I_m0", x0.I_m)):
        lines.append(f"{key} = {value!r}")
    for key in _SOLVER_KEYS:
        lines.append(f"{key} = {getattr(cfg, key)!r}")
    return "\n".join(lines) + "\n"
