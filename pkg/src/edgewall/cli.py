"""Command-line front end: relax, energy, sweep, decay, validate, scales.

Exit codes: 0 success, 1 usage or invalid values, 2 numerical failure
(non-convergence, divergence, or a failing validation criterion).  All output
is deterministic for fixed inputs; sweep parallelism (EDGEWALL_WORKERS) only
reorders the computation, never the output.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .analysis import diagnostics, fit_decay
from .dynamics import RelaxationConfig, initial_profile, relax
from .energy import Cutoff, renormalized_energy
from .errors import DivergenceError, EdgewallError, StabilityError
from .fileio import (
    RunRecord,
    read_profile_csv,
    write_profile_csv,
    write_run_json,
    write_sweep_json,
)
from .grid import make_stretched_grid, make_uniform_grid
from .params import MaterialParams, ModelParams, derive_scales, load_config, parse_angle
from .validation import run_suite

_GRID_DEFAULTS = {"dx0": 0.125, "stretch_b": 20.0, "x_max": 6000.0}
_RELAX_DEFAULTS = {"dt": None, "tol": 1e-8, "max_steps": 200000}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems through exit code 1, not 2."""

    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _add_grid_flags(sub):
    sub.add_argument("--dx0", type=float, default=None, help="spacing of the first cell (default 0.125)")
    sub.add_argument("--stretch", type=float, default=None, help="stretch factor b; cells grow by 1+1/b (default 20, inf = uniform)")
    sub.add_argument("--xmax", type=float, default=None, help="domain end (default 6000)")


def _add_relax_flags(sub):
    sub.add_argument("--beta", type=str, default=None, help='edge angle: decimal radians or "p*pi/q"')
    sub.add_argument("--nu", type=float, default=None, help="stray-field strength, >= 0")
    sub.add_argument("--dt", type=float, default=None, help="time step (default: auto)")
    sub.add_argument("--tol", type=float, default=None, help="residual sup-norm stopping threshold (default 1e-8)")
    sub.add_argument("--max-steps", type=int, default=None, help="step budget (default 200000)")
    sub.add_argument("--report-every", type=int, default=500, help="progress/energy sampling interval")
    sub.add_argument("--out", type=str, default=None, help="output prefix (default 'run')")
    sub.add_argument("--config", type=str, default=None, help="key=value config file; flags override it")
    sub.add_argument("--quiet", action="store_true", help="suppress progress lines")


def _merged_settings(args) -> dict:
    """defaults <- config file <- explicit flags."""
    merged = dict(_GRID_DEFAULTS)
    merged.update(_RELAX_DEFAULTS)
    merged["out_prefix"] = "run"
    merged["beta"] = None
    merged["nu"] = None
    if getattr(args, "config", None):
        merged.update(load_config(args.config))
    overrides = {
        "beta": parse_angle(args.beta) if args.beta is not None else None,
        "nu": args.nu,
        "dx0": args.dx0,
        "stretch_b": args.stretch,
        "x_max": args.xmax,
        "dt": args.dt,
        "tol": args.tol,
        "max_steps": args.max_steps,
        "out_prefix": args.out,
    }
    merged.update({k: v for k, v in overrides.items() if v is not None})
    return merged


def _build_grid(settings):
    if math.isinf(settings["stretch_b"]):
        return make_uniform_grid(settings["dx0"], settings["x_max"])
    return make_stretched_grid(settings["dx0"], settings["stretch_b"], settings["x_max"])


def _run_one(settings, report_every: int, verbose: bool):
    """One relaxation from the standard seed; returns (result, record, grid)."""
    params = ModelParams(beta=settings["beta"], nu=settings["nu"])
    grid = _build_grid(settings)
    cfg = RelaxationConfig(
        dt=settings["dt"],
        tol=settings["tol"],
        max_steps=settings["max_steps"],
        report_every=report_every,
    )
    result = relax(params, grid, initial_profile(params.beta, grid), cfg, verbose=verbose)
    breakdown = renormalized_energy(result.profile, params)
    diag = diagnostics(result.profile)
    record = RunRecord(
        model={"beta": params.beta, "nu": params.nu},
        grid_spec={
            "dx0": settings["dx0"],
            "stretch_b": settings["stretch_b"],
            "x_max": settings["x_max"],
            "nodes": len(grid),
        },
        relaxation={
            "dt": cfg.dt,
            "tol": cfg.tol,
            "max_steps": cfg.max_steps,
            "report_every": cfg.report_every,
        },
        result={
            "converged": result.converged,
            "steps_taken": result.steps_taken,
            "final_residual": result.final_residual,
            "energy_history": [[s, e] for s, e in result.energy_history],
        },
        energy=breakdown.to_dict(),
        diagnostics=diag.to_dict(),
    )
    return result, record, grid


def cmd_relax(args) -> int:
    settings = _merged_settings(args)
    if settings["beta"] is None or settings["nu"] is None:
        raise _UsageError("relax: --beta and --nu are required (flag or config file)")
    result, record, _ = _run_one(settings, args.report_every, verbose=not args.quiet)
    prefix = settings["out_prefix"]
    profile_path = f"{prefix}_profile.csv"
    json_path = f"{prefix}_run.json"
    write_profile_csv(result.profile, profile_path)
    record.files.update({"profile_csv": profile_path, "run_json": json_path})
    write_run_json(record, json_path)
    print(f"{'converged' if result.converged else 'NOT converged'} "
          f"after {result.steps_taken} steps, residual {result.final_residual:.3e}; "
          f"wrote {profile_path}, {json_path}")
    return 0 if result.converged else 2


def cmd_sweep(args) -> int:
    settings = _merged_settings(args)
    try:
        betas = [parse_angle(tok) for tok in args.beta_list.split(",") if tok.strip()]
        nus = [float(tok) for tok in args.nu_list.split(",") if tok.strip()]
    except ValueError as exc:
        raise _UsageError(f"sweep: bad list value: {exc}") from None
    if not betas or not nus:
        raise _UsageError("sweep: --beta-list and --nu-list must be non-empty")
    prefix = settings["out_prefix"]
    pairs = [(b, n) for b in betas for n in nus]

    def one(pair):
        beta, nu = pair
        local = dict(settings)
        local.update(beta=beta, nu=nu)
        try:
            result, record, _ = _run_one(local, args.report_every, verbose=False)
        except (DivergenceError, StabilityError) as exc:
            return None, RunRecord(
                model={"beta": beta, "nu": nu},
                grid_spec={}, relaxation={}, energy={}, diagnostics={},
                result={"converged": False, "error": str(exc)},
            )
        tag = f"{prefix}_b{beta:.6g}_n{nu:.6g}"
        write_profile_csv(result.profile, f"{tag}_profile.csv")
        record.files["profile_csv"] = f"{tag}_profile.csv"
        try:
            window = (50.0, min(500.0, local["x_max"] / 2.0))
            fits = fit_decay(result.profile, window)
            record.diagnostics["decay_fit"] = fits.to_dict()
        except EdgewallError as exc:
            record.diagnostics["decay_fit"] = {"error": str(exc)}
        return result, record

    workers = max(1, int(os.environ.get("EDGEWALL_WORKERS", "1")))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(one, pairs))
    else:
        outcomes = [one(p) for p in pairs]

    records = [rec for _, rec in outcomes]
    table_path = f"{prefix}_sweep.json"
    write_sweep_json(records, table_path)
    failed = sum(
        1 for result, rec in outcomes if result is None or not result.converged
    )
    print(f"sweep: {len(pairs) - failed}/{len(pairs)} runs converged; wrote {table_path}")
    return 2 if failed else 0


def cmd_energy(args) -> int:
    profile = read_profile_csv(args.profile)
    params = ModelParams(beta=profile.beta, nu=args.nu)
    cutoff = Cutoff(profile.beta, width=args.cutoff_width)
    breakdown = renormalized_energy(profile, params, cutoff)
    payload = breakdown.to_dict()
    payload["diagnostics"] = diagnostics(profile).to_dict()
    print(json.dumps(payload, sort_keys=True, indent=2))
    return 0


def cmd_decay(args) -> int:
    profile = read_profile_csv(args.profile)
    try:
        lo_text, hi_text = args.window.split(",")
        window = (float(lo_text), float(hi_text))
    except ValueError:
        raise _UsageError(f"decay: --window expects 'lo,hi', got {args.window!r}") from None
    fits = fit_decay(profile, window)
    print(json.dumps(fits.to_dict(), sort_keys=True, indent=2))
    return 0


def cmd_scales(args) -> int:
    material = MaterialParams(
        saturation_magnetization=args.ms,
        exchange_constant=args.aex,
        anisotropy_constant=args.ku,
        thickness=args.thickness,
    )
    scales = derive_scales(material)
    print(json.dumps(
        {
            "exchange_length_m": scales.exchange_length,
            "bloch_width_m": scales.bloch_width,
            "nu": scales.nu,
            "delta": scales.delta,
        },
        sort_keys=True,
        indent=2,
    ))
    return 0


def cmd_validate(args) -> int:
    passed = run_suite(only=args.only, quick=args.quick, stream=sys.stdout)
    return 0 if passed else 2


def build_parser() -> _Parser:
    parser = _Parser(prog="edgewall", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    p_relax = subs.add_parser("relax", help="relax one profile to a steady state")
    _add_grid_flags(p_relax)
    _add_relax_flags(p_relax)
    p_relax.set_defaults(func=cmd_relax)

    p_sweep = subs.add_parser("sweep", help="relax a grid of (beta, nu) pairs")
    _add_grid_flags(p_sweep)
    _add_relax_flags(p_sweep)
    p_sweep.add_argument("--beta-list", type=str, required=True, help="comma-separated angles")
    p_sweep.add_argument("--nu-list", type=str, required=True, help="comma-separated strengths")
    p_sweep.set_defaults(func=cmd_sweep)

    p_energy = subs.add_parser("energy", help="energy breakdown of a stored profile")
    p_energy.add_argument("--profile", type=str, required=True, help="profile CSV path")
    p_energy.add_argument("--nu", type=float, required=True)
    p_energy.add_argument("--cutoff-width", type=float, default=1.0)
    p_energy.set_defaults(func=cmd_energy)

    p_decay = subs.add_parser("decay", help="fit tail decay of a stored profile")
    p_decay.add_argument("--profile", type=str, required=True)
    p_decay.add_argument("--window", type=str, required=True, help="'lo,hi'")
    p_decay.set_defaults(func=cmd_decay)

    p_val = subs.add_parser("validate", help="run the acceptance criteria suite")
    p_val.add_argument("--only", type=str, default=None, help="criterion number or name substring")
    p_val.add_argument("--quick", action="store_true", help="smaller grids, looser documented tolerances")
    p_val.set_defaults(func=cmd_validate)

    p_scales = subs.add_parser("scales", help="dimensionless scales from material constants")
    p_scales.add_argument("--ms", type=float, required=True, help="saturation magnetization, A/m")
    p_scales.add_argument("--aex", type=float, required=True, help="exchange constant, J/m")
    p_scales.add_argument("--ku", type=float, required=True, help="anisotropy constant, J/m^3")
    p_scales.add_argument("--thickness", type=float, required=True, help="film thickness, m")
    p_scales.set_defaults(func=cmd_scales)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (DivergenceError, StabilityError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except EdgewallError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
