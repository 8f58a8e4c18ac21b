"""Command-line front end: scenario files in, CSV artifacts out.

``awaredyn <subcommand> --config <path> --out <dir> [--seed <u64>]``

Subcommands: simulate, equilibria, phase-portrait, branch-diagram,
hopf-curve, hopf-diagram, sotomayor, region-check.  Each writes its CSV
outputs, a small matplotlib plot script per figure-style output (so the
package itself needs no rendering dependency), and a run manifest echoing
every default for reproducibility.  Exit codes: 0 success, 1 configuration
error, 2 numerical failure; each failure prints a one-line diagnostic to
stderr.

Runs are deterministic: the same configuration produces byte-identical
CSVs.  The ``--seed`` flag and the ``AWARE_DYN_THREADS`` worker cap are
recorded in the manifest; all current computations are deterministic and
single-threaded regardless of the cap.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .config import ScenarioConfig, parse_config
from .errors import AwareDynError, ConfigError, InvalidInputError
from .hopf import curve_covers_simplex, hopf_diagram, trace_hopf_curve
from .integrate import classify_attractor, integrate
from .models import SAUISUAS_PARAM_NAMES, in_omega, saias_rhs, sauisuas_rhs
from .saias import find_equilibria, phase_portrait_data
from .sauisuas import (
    awareness_reproduction_number,
    branch_diagram,
    critical_beta_a,
    equilibrium_p1,
    equilibrium_p2,
    find_endemic_equilibria,
    sotomayor_at_r0_equal_1,
)

SUBCOMMANDS = (
    "simulate",
    "equilibria",
    "phase-portrait",
    "branch-diagram",
    "hopf-curve",
    "hopf-diagram",
    "sotomayor",
    "region-check",
)

GRID_N_DEFAULT = 20
CURVE_STEPS_DEFAULT = 200
SCAN_STEPS_DEFAULT = 200
DIAGRAM_STEPS_DEFAULT = 41


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _require_model(config: ScenarioConfig, model: str, name: str) -> None:
    if config.model != model:
        raise ConfigError(f"subcommand {name!r} requires model = {model}")


def _task_value(config: ScenarioConfig, key: str, default=None, required=False) -> str | None:
    if key in config.task:
        return config.task[key]
    if required:
        raise ConfigError(f"[task] section is missing required key {key!r}")
    return default


def _task_float(config: ScenarioConfig, key: str, default=None, required=False):
    raw = _task_value(config, key, required=required)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        line = config.task_lines.get(key)
        where = f"line {line}: " if line else ""
        raise ConfigError(f"{where}[task] value for {key!r} is not a number: {raw!r}")


def _task_int(config: ScenarioConfig, key: str, default=None):
    raw = _task_value(config, key)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"[task] value for {key!r} is not an integer: {raw!r}")


def _check_task_keys(config: ScenarioConfig, allowed, name: str) -> None:
    for key in config.task:
        if key not in allowed:
            line = config.task_lines.get(key)
            where = f"line {line}: " if line else ""
            raise ConfigError(
                f"{where}unknown [task] key {key!r} for subcommand {name!r}"
            )


def _eig_cells(eigs) -> list[str]:
    cells = []
    for z in eigs:
        cells.append(_fmt(z.real))
        cells.append(_fmt(z.imag))
    return cells


def _equilibria_csv(config: ScenarioConfig) -> str:
    if config.model == "saias":
        lines = ["kind,a,i,re_l1,im_l1,re_l2,im_l2,stable"]
        for eq in find_equilibria(config.params):
            cells = [eq.kind, _fmt(eq.a_star), _fmt(eq.i_star)]
            cells += _eig_cells(eq.eigenvalues)
            cells.append(str(eq.stable).lower())
            lines.append(",".join(cells))
    else:
        lines = ["kind,a,u,i,re_l1,im_l1,re_l2,im_l2,re_l3,im_l3,stable"]
        eqs = [equilibrium_p1(config.params)]
        if awareness_reproduction_number(config.params) > 1.0:
            eqs.append(equilibrium_p2(config.params))
        eqs.extend(find_endemic_equilibria(config.params))
        for eq in eqs:
            cells = [eq.kind, _fmt(eq.a_star), _fmt(eq.u_star), _fmt(eq.i_star)]
            cells += _eig_cells(eq.eigenvalues)
            cells.append(str(eq.stable).lower())
            lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


class _Writer:
    def __init__(self, out_dir: Path):
        self.out_dir = out_dir
        self.outputs: list[str] = []

    def write(self, name: str, text: str) -> None:
        (self.out_dir / name).write_text(text)
        self.outputs.append(name)


def _cmd_simulate(config: ScenarioConfig, w: _Writer) -> dict:
    _check_task_keys(config, ("a0", "u0", "i0", "tail_fraction"), "simulate")
    if config.model == "saias":
        state = (_task_float(config, "a0", required=True),
                 _task_float(config, "i0", required=True))
        rhs = saias_rhs(config.params)
    else:
        state = (_task_float(config, "a0", required=True),
                 _task_float(config, "u0", required=True),
                 _task_float(config, "i0", required=True))
        rhs = sauisuas_rhs(config.params)
    if not in_omega(state):
        raise ConfigError(
            f"initial condition {tuple(state)} lies outside the feasible simplex"
        )
    tail = _task_float(config, "tail_fraction", default=0.25)
    traj = integrate(rhs, state, config.t_end, config.rel_tol, config.abs_tol)
    summary = classify_attractor(traj, tail_fraction=tail)
    w.write("trajectory.csv", traj.to_csv())
    w.write("attractor.json", json.dumps({
        "kind": summary.kind,
        "terminal_state": [float(x) for x in summary.terminal_state],
        "i_min": summary.i_min,
        "i_max": summary.i_max,
        "amplitude": summary.amplitude,
        "tail_fraction": tail,
    }, indent=2) + "\n")
    w.write("plot_timeseries.py", _PLOT_TIMESERIES)
    return {"tail_fraction": tail}


def _cmd_equilibria(config: ScenarioConfig, w: _Writer) -> dict:
    _check_task_keys(config, (), "equilibria")
    w.write("equilibria.csv", _equilibria_csv(config))
    return {}


def _cmd_phase_portrait(config: ScenarioConfig, w: _Writer) -> dict:
    _require_model(config, "saias", "phase-portrait")
    _check_task_keys(config, ("grid_n", "seeds", "t_end"), "phase-portrait")
    grid_n = _task_int(config, "grid_n", GRID_N_DEFAULT)
    t_end = _task_float(config, "t_end", default=50.0)
    seeds = []
    raw = _task_value(config, "seeds")
    if raw:
        for token in raw.split():
            parts = token.split(":")
            if len(parts) != 2:
                raise ConfigError(f"[task] seed {token!r} must have the form a:i")
            seeds.append((float(parts[0]), float(parts[1])))
    try:
        data = phase_portrait_data(config.params, grid_n=grid_n,
                                   seed_trajectories=seeds, t_end=t_end,
                                   rel_tol=config.rel_tol, abs_tol=config.abs_tol)
    except InvalidInputError as exc:
        raise ConfigError(str(exc))

    lines = ["a,i,da_dt,di_dt"]
    lines += [",".join(_fmt(v) for v in row) for row in data.field_grid]
    w.write("field_grid.csv", "\n".join(lines) + "\n")

    lines = ["curve,a,i"]
    for name, poly in data.nullclines.items():
        lines += [f"{name},{_fmt(a)},{_fmt(i)}" for a, i in poly]
    w.write("nullclines.csv", "\n".join(lines) + "\n")

    lines = ["trajectory,t,a,i,s"]
    for k, traj in enumerate(data.trajectories):
        for t, row in zip(traj.times, traj.states):
            s = 1.0 - float(row[0]) - float(row[1])
            lines.append(f"{k},{_fmt(t)},{_fmt(row[0])},{_fmt(row[1])},{_fmt(s)}")
    w.write("trajectories.csv", "\n".join(lines) + "\n")

    w.write("equilibria.json", json.dumps([
        {
            "kind": eq.kind,
            "a": eq.a_star,
            "i": eq.i_star,
            "eigenvalues": [[z.real, z.imag] for z in eq.eigenvalues],
            "stable": eq.stable,
        }
        for eq in data.equilibria
    ], indent=2) + "\n")
    w.write("plot_phase_portrait.py", _PLOT_PHASE_PORTRAIT)
    return {"grid_n": grid_n, "portrait_t_end": t_end}


def _cmd_branch_diagram(config: ScenarioConfig, w: _Writer) -> dict:
    _require_model(config, "sauisuas", "branch-diagram")
    _check_task_keys(config, ("sweep", "sweep_min", "sweep_max", "steps"), "branch-diagram")
    sweep = _task_value(config, "sweep", required=True)
    if sweep not in SAUISUAS_PARAM_NAMES:
        raise ConfigError(
            f"[task] sweep parameter {sweep!r} is not one of {SAUISUAS_PARAM_NAMES}"
        )
    lo = _task_float(config, "sweep_min", required=True)
    hi = _task_float(config, "sweep_max", required=True)
    if not hi > lo:
        raise ConfigError(f"[task] sweep range ({lo}, {hi}) is empty")
    steps = _task_int(config, "steps", 81)
    try:
        diagram = branch_diagram(config.params, sweep, (lo, hi), steps)
    except InvalidInputError as exc:
        raise ConfigError(str(exc))

    lines = ["sweep_value,kind,a,u,i,re_l1,im_l1,re_l2,im_l2,re_l3,im_l3,stable"]
    for value, entry in zip(diagram.values, diagram.branches):
        for eq in entry:
            cells = [_fmt(value), eq.kind, _fmt(eq.a_star), _fmt(eq.u_star),
                     _fmt(eq.i_star)]
            cells += _eig_cells(eq.eigenvalues)
            cells.append(str(eq.stable).lower())
            lines.append(",".join(cells))
    w.write("branch_diagram.csv", "\n".join(lines) + "\n")

    bif = {
        "transcritical": [float(v) for v in diagram.transcritical_values],
        "fold": [float(v) for v in diagram.fold_values],
    }
    if sweep == "beta_a" and awareness_reproduction_number(config.params) > 1.0:
        bif["closed_form_critical_beta_a"] = critical_beta_a(config.params)
    w.write("bifurcations.json", json.dumps(bif, indent=2) + "\n")
    w.write("plot_branch_diagram.py", _PLOT_BRANCH_DIAGRAM)
    return {"sweep": sweep, "steps": steps}


def _hopf_pair_settings(config: ScenarioConfig):
    sigma = _task_value(config, "sigma", required=True)
    tau = _task_value(config, "tau", required=True)
    for label, value in (("sigma", sigma), ("tau", tau)):
        if value not in SAUISUAS_PARAM_NAMES:
            raise ConfigError(
                f"[task] {label} parameter {value!r} is not one of {SAUISUAS_PARAM_NAMES}"
            )
    if sigma == tau:
        raise ConfigError("[task] sigma and tau must be distinct parameters")
    return sigma, tau


def _cmd_hopf_curve(config: ScenarioConfig, w: _Writer) -> dict:
    _require_model(config, "sauisuas", "hopf-curve")
    allowed = ("sigma", "tau", "sigma_min", "sigma_max", "tau_min", "tau_max",
               "steps", "scan_steps", "binding")
    _check_task_keys(config, allowed, "hopf-curve")
    sigma, tau = _hopf_pair_settings(config)
    sigma_lo = _task_float(config, "sigma_min", required=True)
    sigma_hi = _task_float(config, "sigma_max", required=True)
    tau_lo = _task_float(config, "tau_min", required=True)
    tau_hi = _task_float(config, "tau_max", required=True)
    for label, lo, hi in (("sigma", sigma_lo, sigma_hi), ("tau", tau_lo, tau_hi)):
        if not hi > lo:
            raise ConfigError(f"[task] {label} range ({lo}, {hi}) is empty")
    steps = _task_int(config, "steps", CURVE_STEPS_DEFAULT)
    scan_steps = _task_int(config, "scan_steps", SCAN_STEPS_DEFAULT)
    binding = _task_value(config, "binding")
    try:
        curve = trace_hopf_curve(config.params, sigma, tau, (sigma_lo, sigma_hi),
                                 (tau_lo, tau_hi), binding=binding,
                                 n_sigma=steps, n_scan=scan_steps)
    except InvalidInputError as exc:
        raise ConfigError(str(exc))
    w.write("hopf_curve.csv", curve.to_csv())
    w.write("plot_hopf_curve.py", _plot_hopf_curve_script(sigma, tau))
    w.write("plot_prevalence.py", _plot_prevalence_script(sigma))
    return {"sigma": sigma, "tau": tau, "steps": steps, "scan_steps": scan_steps,
            "binding": binding, "points": len(curve), "truncated": curve.truncated}


def _cmd_hopf_diagram(config: ScenarioConfig, w: _Writer) -> dict:
    _require_model(config, "sauisuas", "hopf-diagram")
    _check_task_keys(config, ("q_min", "q_max", "steps", "a0", "u0", "i0"),
                     "hopf-diagram")
    q_lo = _task_float(config, "q_min", required=True)
    q_hi = _task_float(config, "q_max", required=True)
    if not q_hi > q_lo:
        raise ConfigError(f"[task] q range ({q_lo}, {q_hi}) is empty")
    steps = _task_int(config, "steps", DIAGRAM_STEPS_DEFAULT)
    state = (_task_float(config, "a0", 0.0), _task_float(config, "u0", 0.0),
             _task_float(config, "i0", 0.1))
    diagram = hopf_diagram(config.params, (q_lo, q_hi), steps,
                           t_end=config.t_end, rel_tol=config.rel_tol,
                           abs_tol=config.abs_tol, initial_state=state)
    w.write("hopf_diagram.csv", diagram.to_csv())
    w.write("plot_hopf_diagram.py", _PLOT_HOPF_DIAGRAM)
    return {"steps": steps, "rows": len(diagram.rows)}


def _cmd_sotomayor(config: ScenarioConfig, w: _Writer) -> dict:
    _require_model(config, "sauisuas", "sotomayor")
    _check_task_keys(config, (), "sotomayor")
    report = sotomayor_at_r0_equal_1(config.params)
    w.write("sotomayor.json", json.dumps({
        "left_vec_dot_f_mu": report.left_vec_dot_f_mu,
        "left_dot_Dfmu_v": report.left_dot_Dfmu_v,
        "left_dot_D2f_vv": report.left_dot_D2f_vv,
        "v": [float(x) for x in report.v],
        "forward_bifurcation": bool(
            report.left_vec_dot_f_mu == 0.0
            and report.left_dot_Dfmu_v > 0.0
            and report.left_dot_D2f_vv < 0.0
        ),
    }, indent=2) + "\n")
    return {}


def _cmd_region_check(config: ScenarioConfig, w: _Writer) -> dict:
    _require_model(config, "sauisuas", "region-check")
    _check_task_keys(config, ("sigma_min", "sigma_max", "tau_min", "tau_max",
                              "steps", "scan_steps"), "region-check")
    sigma_lo = _task_float(config, "sigma_min", 0.0)
    sigma_hi = _task_float(config, "sigma_max", 1.0)
    tau_lo = _task_float(config, "tau_min", 0.0)
    tau_hi = _task_float(config, "tau_max", 3.0)
    steps = _task_int(config, "steps", 100)
    scan_steps = _task_int(config, "scan_steps", SCAN_STEPS_DEFAULT)
    curve = trace_hopf_curve(config.params, "p", "q", (sigma_lo, sigma_hi),
                             (tau_lo, tau_hi), n_sigma=steps, n_scan=scan_steps)
    covered = curve_covers_simplex(curve)
    w.write("hopf_curve.csv", curve.to_csv())
    w.write("region_check.json", json.dumps({
        "covered": covered,
        "curve_points": len(curve),
    }, indent=2) + "\n")
    w.write("plot_hopf_curve.py", _plot_hopf_curve_script("p", "q"))
    return {"steps": steps, "scan_steps": scan_steps, "covered": covered}


_HANDLERS = {
    "simulate": _cmd_simulate,
    "equilibria": _cmd_equilibria,
    "phase-portrait": _cmd_phase_portrait,
    "branch-diagram": _cmd_branch_diagram,
    "hopf-curve": _cmd_hopf_curve,
    "hopf-diagram": _cmd_hopf_diagram,
    "sotomayor": _cmd_sotomayor,
    "region-check": _cmd_region_check,
}


def run_subcommand(name: str, config: ScenarioConfig, out_dir, seed=None) -> dict:
    """Execute one subcommand; returns the run manifest (also written)."""
    if name not in _HANDLERS:
        raise ConfigError(f"unknown subcommand {name!r}; expected one of {SUBCOMMANDS}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    writer = _Writer(out_dir)
    extras = _HANDLERS[name](config, writer)

    digest = hashlib.sha256()
    digest.update(__version__.encode())
    digest.update(b"\n")
    digest.update(config.canonical().encode())
    manifest = {
        "artifact_version": __version__,
        "scenario_hash": digest.hexdigest(),
        "created_utc": datetime.now(timezone.utc).isoformat(),
        "subcommand": name,
        "seed": seed,
        "worker_cap": os.environ.get("AWARE_DYN_THREADS"),
        "defaults": {
            "t_end": config.t_end,
            "rel_tol": config.rel_tol,
            "abs_tol": config.abs_tol,
            "grid_n": GRID_N_DEFAULT,
            "curve_steps": CURVE_STEPS_DEFAULT,
            "scan_steps": SCAN_STEPS_DEFAULT,
            "newton_seed_grid": 40,
            **extras,
        },
        "outputs": writer.outputs,
    }
    (out_dir / "run_manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    return manifest


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="awaredyn",
        description="Awareness-epidemic models: simulation, equilibria, bifurcations.",
    )
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--config", required=True, help="scenario configuration file")
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--seed", type=int, default=None,
                        help="recorded in the manifest for reproducibility")
    args = parser.parse_args(argv)

    try:
        text = Path(args.config).read_text()
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 1

    try:
        config = parse_config(text)
        run_subcommand(args.subcommand, config, args.out, seed=args.seed)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except AwareDynError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    return 0


_PLOT_TIMESERIES = '''#!/usr/bin/env python3
"""Plot the simulated compartment fractions from trajectory.csv."""
import csv
import matplotlib.pyplot as plt

with open("trajectory.csv") as fh:
    rows = list(csv.DictReader(fh))
t = [float(r["t"]) for r in rows]
fig, ax = plt.subplots(figsize=(8, 4.5))
for name in rows[0]:
    if name != "t":
        ax.plot(t, [float(r[name]) for r in rows], label=name)
ax.set_xlabel("time")
ax.set_ylabel("fraction")
ax.legend()
fig.tight_layout()
fig.savefig("timeseries.png", dpi=150)
'''

_PLOT_PHASE_PORTRAIT = '''#!/usr/bin/env python3
"""Phase portrait: vector field, nullclines, equilibria, trajectories."""
import csv
import json
import matplotlib.pyplot as plt

fig, ax = plt.subplots(figsize=(6, 6))
with open("field_grid.csv") as fh:
    grid = list(csv.DictReader(fh))
ax.quiver([float(r["a"]) for r in grid], [float(r["i"]) for r in grid],
          [float(r["da_dt"]) for r in grid], [float(r["di_dt"]) for r in grid],
          angles="xy", width=0.0025, alpha=0.5)
with open("nullclines.csv") as fh:
    rows = list(csv.DictReader(fh))
for name in sorted({r["curve"] for r in rows}):
    pts = [(float(r["a"]), float(r["i"])) for r in rows if r["curve"] == name]
    ax.plot(*zip(*pts), label=name)
with open("trajectories.csv") as fh:
    rows = list(csv.DictReader(fh))
for k in sorted({r["trajectory"] for r in rows}):
    pts = [(float(r["a"]), float(r["i"])) for r in rows if r["trajectory"] == k]
    ax.plot(*zip(*pts), color="gray", lw=0.8)
for eq in json.load(open("equilibria.json")):
    ax.plot(eq["a"], eq["i"], "o" if eq["stable"] else "x",
            color="black", markersize=8)
ax.set_xlabel("a")
ax.set_ylabel("i")
ax.legend(fontsize=8)
fig.tight_layout()
fig.savefig("phase_portrait.png", dpi=150)
'''

_PLOT_BRANCH_DIAGRAM = '''#!/usr/bin/env python3
"""Bifurcation diagram: prevalence of each equilibrium vs the swept parameter."""
import csv
import matplotlib.pyplot as plt

with open("branch_diagram.csv") as fh:
    rows = list(csv.DictReader(fh))
fig, ax = plt.subplots(figsize=(7, 4.5))
for stable, color in (("true", "tab:blue"), ("false", "tab:red")):
    pts = [(float(r["sweep_value"]), float(r["i"]))
           for r in rows if r["stable"] == stable]
    if pts:
        ax.plot(*zip(*pts), ".", color=color, markersize=3,
                label="stable" if stable == "true" else "unstable")
ax.set_xlabel("swept parameter")
ax.set_ylabel("i*")
ax.legend()
fig.tight_layout()
fig.savefig("branch_diagram.png", dpi=150)
'''

_PLOT_HOPF_DIAGRAM = '''#!/usr/bin/env python3
"""Prevalence vs q with the oscillation envelope on the unstable side."""
import csv
import matplotlib.pyplot as plt

with open("hopf_diagram.csv") as fh:
    rows = list(csv.DictReader(fh))
fig, ax = plt.subplots(figsize=(7, 4.5))
stable = [(float(r["q"]), float(r["i_star"])) for r in rows if r["stable"] == "true"]
unstable = [(float(r["q"]), float(r["i_star"])) for r in rows if r["stable"] == "false"]
if stable:
    ax.plot(*zip(*stable), ".", color="tab:red", label="stable i*")
if unstable:
    ax.plot(*zip(*unstable), ".", color="black", label="unstable i*")
env = [(float(r["q"]), float(r["env_min"]), float(r["env_max"]))
       for r in rows if r["env_min"]]
for q, lo, hi in env:
    ax.plot([q, q], [lo, hi], color="tab:green", alpha=0.4, lw=1)
ax.set_xlabel("q")
ax.set_ylabel("fraction of infectious hosts")
ax.legend()
fig.tight_layout()
fig.savefig("hopf_diagram.png", dpi=150)
'''


def _plot_hopf_curve_script(sigma: str, tau: str) -> str:
    return f'''#!/usr/bin/env python3
"""Hopf-bifurcation curve in the ({sigma}, {tau}) parameter plane."""
import csv
import matplotlib.pyplot as plt

with open("hopf_curve.csv") as fh:
    rows = list(csv.DictReader(fh))
fig, ax = plt.subplots(figsize=(6, 4.5))
ax.plot([float(r["sigma"]) for r in rows], [float(r["tau"]) for r in rows], "-")
ax.set_xlabel({sigma!r})
ax.set_ylabel({tau!r})
fig.tight_layout()
fig.savefig("hopf_curve.png", dpi=150)
'''


def _plot_prevalence_script(sigma: str) -> str:
    return f'''#!/usr/bin/env python3
"""Endemic prevalence along the Hopf curve."""
import csv
import matplotlib.pyplot as plt

with open("hopf_curve.csv") as fh:
    rows = list(csv.DictReader(fh))
fig, ax = plt.subplots(figsize=(6, 4.5))
ax.plot([float(r["sigma"]) for r in rows], [float(r["i"]) for r in rows], "-")
ax.set_xlabel({sigma!r})
ax.set_ylabel("i* at the bifurcation point")
fig.tight_layout()
fig.savefig("hopf_prevalence.png", dpi=150)
'''


if __name__ == "__main__":
    sys.exit(main())
