"""Aggregated analysis of a scenario: viability, reproduction number,
equilibria with residuals, stability, and the control threshold.

The text and JSON renderings are built from the same report object and
format every number with ``repr``, so the two carry identical digits.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .equilibria import Equilibrium, brdfe, refined_endemic, trivial_equilibrium
from .errors import NoEndemicEquilibrium, NumericalFailure
from .model import basic_offspring_number, in_omega, mosquito_viability
from .reproduction import r0_closed_form, r0_factors, r0_spectral
from .scenario import Scenario
from .stability import classify
from .threshold import NoControlNeeded, ThresholdResult, Unattainable, min_control

_STATE_FIELDS = ("S_h", "E_h", "I_h", "A_m", "S_m", "E_m", "I_m")


@dataclass(frozen=True)
class EquilibriumEntry:
    kind: str
    state: tuple[float, ...]
    residual: float
    inside_region: bool
    refined: bool
    classification: str
    r0_at_point: float | None


@dataclass(frozen=True)
class AnalysisReport:
    scenario: str
    control: float
    viability: float
    collapsed: bool
    offspring_ratio: float | None
    r0_spectral: float | None
    r0_closed_form: float | None
    r_hm: float | None
    r_mh: float | None
    equilibria: tuple[EquilibriumEntry, ...]
    endemic_note: str | None
    threshold: dict


def _entry(scenario: Scenario, eq: Equilibrium) -> EquilibriumEntry:
    rep = classify(scenario.params, scenario.control, eq)
    return EquilibriumEntry(
        kind=eq.kind.value,
        state=eq.state.as_tuple(),
        residual=eq.residual_norm,
        inside_region=in_omega(scenario.params, eq.state),
        refined=eq.refined,
        classification=rep.classification.value,
        r0_at_point=rep.r0_at_point,
    )


def _threshold_summary(result) -> dict:
    if isinstance(result, ThresholdResult):
        return {
            "kind": "threshold",
            "c_star": result.c_star,
            "r0_at_c_star": result.r0_at_c_star,
            "bracket": list(result.bracket),
            "iterations": result.iterations,
            "collapse_bound": result.collapse_bound,
        }
    if isinstance(result, NoControlNeeded):
        return {
            "kind": "no_control_needed",
            "r0_at_zero": result.r0_at_zero,
            "collapse_bound": result.collapse_bound,
        }
    assert isinstance(result, Unattainable)
    return {
        "kind": "unattainable",
        "r0_range": list(result.r0_range),
        "collapse_bound": result.collapse_bound,
    }


def build_report(scenario: Scenario) -> AnalysisReport:
    p, ctrl = scenario.params, scenario.control
    viability = mosquito_viability(p, ctrl)
    collapsed = viability <= 0.0
    try:
        offspring = basic_offspring_number(p, ctrl)
    except ValueError:
        offspring = None

    entries = [_entry(scenario, trivial_equilibrium(p))]
    r0s = r0c = r_hm = r_mh = None
    endemic_note = None
    if collapsed:
        endemic_note = ("mosquito population collapses at this control level; "
                        "only the trivial equilibrium exists")
    else:
        r0s = r0_spectral(p, ctrl)
        r0c = r0_closed_form(p, ctrl)
        r_hm, r_mh = r0_factors(p, ctrl)
        entries.append(_entry(scenario, brdfe(p, ctrl)))
        try:
            entries.append(_entry(scenario, refined_endemic(p, ctrl)))
        except (NoEndemicEquilibrium, NumericalFailure) as exc:
            endemic_note = str(exc)

    return AnalysisReport(
        scenario=scenario.name,
        control=ctrl.c,
        viability=viability,
        collapsed=collapsed,
        offspring_ratio=offspring,
        r0_spectral=r0s,
        r0_closed_form=r0c,
        r_hm=r_hm,
        r_mh=r_mh,
        equilibria=tuple(entries),
        endemic_note=endemic_note,
        threshold=_threshold_summary(min_control(p)),
    )


def _num(value) -> str:
    return "n/a" if value is None else repr(value)


def render_text(report: AnalysisReport) -> str:
    lines = [
        f"scenario: {report.scenario}",
        f"control c = {_num(report.control)} per day",
        "",
        f"mosquito viability margin = {_num(report.viability)}"
        + ("  [collapsed]" if report.collapsed else ""),
        f"basic offspring ratio = {_num(report.offspring_ratio)}",
        f"R0 (spectral)    = {_num(report.r0_spectral)}",
        f"R0 (closed form) = {_num(report.r0_closed_form)}",
        f"R_hm = {_num(report.r_hm)}",
        f"R_mh = {_num(report.r_mh)}",
        "",
        "equilibria:",
    ]
    for eq in report.equilibria:
        lines.append(f"  [{eq.kind}] residual = {_num(eq.residual)}"
                     f"  refined = {str(eq.refined).lower()}"
                     f"  in_region = {str(eq.inside_region).lower()}")
        lines.append("    " + "  ".join(
            f"{name} = {_num(v)}" for name, v in zip(_STATE_FIELDS, eq.state)))
        extra = f"    stability: {eq.classification}"
        if eq.r0_at_point is not None:
            extra += f"  (R0 at point = {_num(eq.r0_at_point)})"
        lines.append(extra)
    if report.endemic_note:
        lines.append(f"  endemic: {report.endemic_note}")

    lines.append("")
    th = report.threshold
    if th["kind"] == "threshold":
        lines.append(f"minimum control c* = {_num(th['c_star'])}"
                     f"  (R0 at c* = {_num(th['r0_at_c_star'])})")
        lines.append(f"  bracket = [{_num(th['bracket'][0])}, {_num(th['bracket'][1])}]"
                     f"  iterations = {th['iterations']}")
    elif th["kind"] == "no_control_needed":
        lines.append(f"no control needed (R0 at c=0 = {_num(th['r0_at_zero'])})")
    else:
        lines.append("control threshold unattainable on the viable interval")
    lines.append(f"  mosquito collapse bound c = {_num(th['collapse_bound'])}")
    return "\n".join(lines) + "\n"


def as_json_dict(report: AnalysisReport) -> dict:
    return {
        "scenario": report.scenario,
        "control": report.control,
        "viability": report.viability,
        "collapsed": report.collapsed,
        "offspring_ratio": report.offspring_ratio,
        "r0_spectral": report.r0_spectral,
        "r0_closed_form": report.r0_closed_form,
        "r_hm": report.r_hm,
        "r_mh": report.r_mh,
        "equilibria": [
            {
                "kind": eq.kind,
                "state": dict(zip(_STATE_FIELDS, eq.state)),
                "residual": eq.residual,
                "inside_region": eq.inside_region,
                "refined": eq.refined,
                "classification": eq.classification,
                "r0_at_point": eq.r0_at_point,
            }
            for eq in report.equilibria
        ],
        "endemic_note": report.endemic_note,
        "threshold": report.threshold,
    }


def render_json(report: AnalysisReport) -> str:
    return json.dumps(as_json_dict(report), indent=2) + "\n"
