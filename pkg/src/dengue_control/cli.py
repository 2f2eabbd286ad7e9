"""Command-line front end.

Subcommands:
  simulate   integrate a scenario; write a CSV trajectory (and optionally
             a two-panel SVG chart)
  analyze    full report: viability, R0 (both routes), equilibria with
             residuals and stability, control threshold
  threshold  minimum constant control keeping R0 below one
  sweep      (c, R0, stability) table over a grid of control levels

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 model-regime error (mosquito collapse / missing equilibrium).
All file writes are whole-file atomic (temp file + rename).
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
import warnings
from pathlib import Path

from .equilibria import brdfe
from .errors import (
    MosquitoCollapseError,
    NoEndemicEquilibrium,
    NumericalFailure,
    ScenarioError,
)
from .integrator import Trajectory, integrate
from .model import State8, mosquito_viability
from .report import build_report, render_json, render_text
from .reproduction import r0_closed_form
from .scenario import Scenario, get_builtin, load_scenario
from .stability import Classification, classify
from .svgplot import render_trajectory_svg
from .threshold import NoControlNeeded, ThresholdResult, min_control

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_REGIME = 4

CSV_HEADER = "t,S_h,E_h,I_h,R_h,A_m,S_m,E_m,I_m"


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def trajectory_to_csv(traj: Trajectory) -> str:
    """Full round-trip double formatting: re-parsing and re-rendering the
    text reproduces it byte for byte."""
    lines = [CSV_HEADER]
    for t, state in zip(traj.times, traj.states):
        values = (float(t),) + state.as_tuple()
        lines.append(",".join(repr(v) for v in values))
    return "\n".join(lines) + "\n"


def parse_trajectory_csv(text: str) -> tuple[list[float], list[State8]]:
    lines = text.strip().splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ScenarioError("trajectory CSV: missing or unexpected header")
    times: list[float] = []
    states: list[State8] = []
    for line in lines[1:]:
        fields = [float(v) for v in line.split(",")]
        if len(fields) != 9:
            raise ScenarioError("trajectory CSV: expected 9 columns")
        times.append(fields[0])
        states.append(State8(*fields[1:]))
    return times, states


def _load(args) -> Scenario:
    scenario = get_builtin(args.builtin) if args.builtin else load_scenario(args.scenario)
    if args.control is not None:
        if args.control < 0.0:
            raise ScenarioError(f"control level must be >= 0, got {args.control}")
        scenario = scenario.with_control(args.control)
    if getattr(args, "t_end", None) is not None:
        if args.t_end < scenario.solver.t0:
            raise ScenarioError(f"t_end must be >= t0, got {args.t_end}")
        scenario = scenario.with_t_end(args.t_end)
    return scenario


def cmd_simulate(args) -> int:
    scenario = _load(args)
    traj = integrate(scenario.params, scenario.control, scenario.initial,
                     scenario.solver)
    out_dir = Path(args.out)
    csv_path = out_dir / "trajectory.csv"
    _write_atomic(csv_path, trajectory_to_csv(traj))
    print(f"wrote {csv_path}")
    if args.svg:
        svg_path = out_dir / "compartments.svg"
        _write_atomic(svg_path, render_trajectory_svg(traj, title=scenario.name))
        print(f"wrote {svg_path}")
    data = traj.as_array()
    print(f"rows: {len(traj.states)}  steps: {traj.step_stats.accepted} accepted, "
          f"{traj.step_stats.rejected} rejected")
    print(f"peak infected humans: {float(data[:, 2].max())!r} "
          f"at t = {float(traj.times[data[:, 2].argmax()])!r}")
    print(f"final infected mosquitoes: {float(data[-1, 7])!r}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    scenario = _load(args)
    report = build_report(scenario)
    sys.stdout.write(render_json(report) if args.json else render_text(report))
    return EXIT_OK


def cmd_threshold(args) -> int:
    scenario = _load(args)
    result = min_control(scenario.params, tol=args.tol)
    if isinstance(result, ThresholdResult):
        print(f"c* = {result.c_star:.6f}")
        print(f"R0(c*) = {result.r0_at_c_star!r}")
        lo, hi = result.bracket
        print(f"bracket = [{lo!r}, {hi!r}]  (width {hi - lo:.3g} <= tol {args.tol:g})")
        print(f"iterations = {result.iterations}")
    elif isinstance(result, NoControlNeeded):
        r0 = "undefined (mosquito collapse)" if result.r0_at_zero is None \
            else repr(result.r0_at_zero)
        print(f"no control needed: R0 at c=0 = {r0}")
    else:
        print("unattainable: R0 stays above 1 on the whole viable interval")
    print(f"collapse bound c = {result.collapse_bound!r}")
    return EXIT_OK


def _sweep_grid(c_min: float, c_max: float, c_step: float) -> list[float]:
    if c_min < 0.0 or c_max < c_min or c_step <= 0.0:
        raise ScenarioError(
            f"invalid sweep grid: need 0 <= c-min <= c-max and c-step > 0 "
            f"(got {c_min}, {c_max}, {c_step})")
    grid = []
    i = 0
    while True:
        c = c_min + i * c_step
        if c > c_max + 1e-12 * max(1.0, abs(c_max)):
            break
        grid.append(min(c, c_max))
        i += 1
    return grid


def cmd_sweep(args) -> int:
    scenario = _load(args)
    p = scenario.params
    lines = ["c,R0,brdfe_stable,collapsed"]
    with warnings.catch_warnings():
        # brdfe at c > 0 is classified at the declared reference state,
        # whose residual warning would fire once per grid point here
        warnings.simplefilter("ignore")
        for c in _sweep_grid(args.c_min, args.c_max, args.c_step):
            if mosquito_viability(p, c) <= 0.0:
                lines.append(f"{c!r},,,true")
                continue
            r0 = r0_closed_form(p, c)
            rep = classify(p, c, brdfe(p, c))
            stable = rep.classification is Classification.ASYMPTOTICALLY_STABLE
            lines.append(f"{c!r},{r0!r},{str(stable).lower()},false")
    text = "\n".join(lines) + "\n"
    out_path = Path(args.out) / "sweep.csv"
    _write_atomic(out_path, text)
    print(f"wrote {out_path}")
    sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dengue-control",
        description="Host-vector dengue model: simulation, equilibria, "
                    "reproduction number and control thresholds.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, with_t_end=True):
        src = sp.add_mutually_exclusive_group(required=True)
        src.add_argument("--scenario", metavar="PATH", help="scenario file (key = value lines)")
        src.add_argument("--builtin", metavar="NAME", help="built-in scenario, e.g. capeverde2009")
        sp.add_argument("--control", type=float, default=None, metavar="C",
                        help="override the control level c (per day)")
        if with_t_end:
            sp.add_argument("--t-end", dest="t_end", type=float, default=None,
                            metavar="DAYS", help="override the simulation horizon")

    sp = sub.add_parser("simulate", help="integrate and export CSV (and SVG)")
    add_common(sp)
    sp.add_argument("--out", default=".", metavar="DIR", help="output directory")
    sp.add_argument("--svg", action="store_true", help="also write compartments.svg")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("analyze", help="equilibria, R0, stability, threshold")
    add_common(sp, with_t_end=False)
    sp.add_argument("--json", action="store_true", help="machine-readable output")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("threshold", help="minimum control keeping R0 < 1")
    add_common(sp, with_t_end=False)
    sp.add_argument("--tol", type=float, default=1e-6, metavar="TOL",
                    help="bracket width tolerance on c (default 1e-6)")
    sp.set_defaults(func=cmd_threshold)

    sp = sub.add_parser("sweep", help="R0 and stability over a grid of c")
    add_common(sp, with_t_end=False)
    sp.add_argument("--c-min", dest="c_min", type=float, default=0.0)
    sp.add_argument("--c-max", dest="c_max", type=float, default=0.3)
    sp.add_argument("--c-step", dest="c_step", type=float, default=0.05)
    sp.add_argument("--out", default=".", metavar="DIR", help="output directory")
    sp.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (MosquitoCollapseError, NoEndemicEquilibrium) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REGIME
    except NumericalFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
