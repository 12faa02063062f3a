"""Command-line driver.

Each subcommand resolves its inputs, runs the corresponding library
pipeline, writes delimited data files, and prints one RunSummary JSON
object to standard output.  Exit codes: 0 ok, 1 no result (no bound
state, no admissible region), 2 usage, 3 numerical failure.

Identical invocations produce byte-identical data files: fixed float
formatting, stable key order, no timestamps.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from typing import List, Optional

import numpy as np
from scipy.integrate import simpson

from .geometry import curvature_at, make_gaussian_bump, read_profile_csv
from .inverse import AdmissibleRegionError, amplitude, custom_potential, \
    design_profile, free_potential, harmonic_potential, round_trip_error, \
    strip_bounds
from .numerics import QuadratureError
from .potential import default_potential_grid, effective_potential, \
    effective_potential_table
from .spectral import ansatz_wavefunction, probability_current, \
    probability_density, solve_bound_states_rho

_NUM = "%.12e"
_GAUSS_DOMAIN = 400.0  # generous bump domain so auto-expansion can run


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return "%d" % value
    return _NUM % value


def _write_table(path: str, header: List[str], rows, fmt: str) -> None:
    if fmt == "json":
        payload = {"columns": header,
                   "rows": [[float(v) for v in row] for row in rows]}
        with open(path, "w", newline="") as fh:
            fh.write(json.dumps(payload, sort_keys=True))
            fh.write("\n")
        return
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _write_json(path: str, obj) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(json.dumps(obj, sort_keys=True, indent=2))
        fh.write("\n")


def _data_path(args, default_stem: str) -> str:
    if args.out:
        return args.out
    ext = "json" if getattr(args, "format", "csv") == "json" else "csv"
    return "%s.%s" % (default_stem, ext)


def _stem(path: str) -> str:
    return path[:path.rfind(".")] if "." in path.split("/")[-1] else path


def _resolve_profile(args):
    if args.surface == "gaussian":
        return make_gaussian_bump(args.a0, args.sigma0, _GAUSS_DOMAIN)
    if not args.profile_csv:
        raise ValueError("--surface table needs --profile-csv")
    return read_profile_csv(args.profile_csv)


def _resolve_potential(args):
    if args.potential == "free":
        return free_potential()
    if args.potential == "harmonic":
        if args.omega is None:
            raise ValueError("--potential harmonic needs --omega")
        return harmonic_potential(args.omega)
    if not args.potential_csv:
        raise ValueError("--potential table needs --potential-csv")
    rows = np.loadtxt(args.potential_csv, delimiter=",", skiprows=1,
                      ndmin=2)
    return custom_potential(rows[:, :2])


def _mq_values(args) -> List[int]:
    if getattr(args, "mq_range", None):
        parts = args.mq_range.split("..")
        if len(parts) != 2:
            raise ValueError("--mq-range must look like a..b")
        lo, hi = int(parts[0]), int(parts[1])
        if lo < 0 or hi < lo:
            raise ValueError("--mq-range must satisfy 0 <= a <= b")
        return list(range(lo, hi + 1))
    return [args.mq]


def _strip_json(strip, mq: int, potential_kind: str) -> dict:
    return {
        "rho_lower": strip.rho_lower,
        "rho_upper": strip.rho_upper,
        "lower_criterion": strip.lower_criterion,
        "upper_criterion": strip.upper_criterion,
        "mq": mq,
        "potential_kind": potential_kind,
    }


# ---------------------------------------------------------------------------
# subcommand bodies: each returns (metrics, outputs, status, extra)

def _run_curvature(args):
    profile = _resolve_profile(args)
    lo, hi = profile.domain
    rho_max = args.rho_max if args.rho_max is not None else \
        (5.0 * args.sigma0 if args.surface == "gaussian" else hi)
    n = args.nodes if args.nodes is not None else 1000
    grid = np.linspace(lo, min(rho_max, hi), n)
    samples = [curvature_at(profile, float(r)) for r in grid]
    path = _data_path(args, "curvature")
    _write_table(path, ["rho", "k1", "k2", "mean", "gauss", "metric_det"],
                 [(s.rho, s.k1, s.k2, s.mean, s.gauss, s.metric_det)
                  for s in samples], args.format)
    outputs = [path]
    if args.plot:
        from .plots import save_curvature_plot
        outputs.append(save_curvature_plot(samples, _stem(path) + ".png"))
    metrics = {"k1_at_start": samples[0].k1, "k2_at_start": samples[0].k2,
               "rho_start": samples[0].rho}
    return metrics, outputs, "ok", {}


def _run_potential(args):
    profile = _resolve_profile(args)
    n = args.nodes if args.nodes is not None else 1000
    mqs = _mq_values(args)
    metrics = {}
    outputs = []
    base = _data_path(args, "potential")
    for mq in mqs:
        grid = default_potential_grid(profile, mq, n=n,
                                      rho_max=args.rho_max)
        table = effective_potential_table(profile, mq, grid)
        path = base if len(mqs) == 1 else \
            "%s_mq%d.%s" % (_stem(base), mq, args.format)
        _write_table(path, ["x", "rho", "w"],
                     list(table.nodes), args.format)
        outputs.append(path)
        idx = int(np.argmin(table.w))
        key = "" if len(mqs) == 1 else "_mq%d" % mq
        metrics["min_w" + key] = float(table.w[idx])
        metrics["argmin_rho" + key] = float(table.rho[idx])
        if args.plot:
            from .plots import save_potential_plot
            outputs.append(save_potential_plot(table,
                                               _stem(path) + ".png"))
    return metrics, outputs, "ok", {}


def _run_spectrum(args):
    profile = _resolve_profile(args)
    n = args.nodes if args.nodes is not None else 8000
    mqs = _mq_values(args)
    metrics = {}
    outputs = []
    base = _data_path(args, "spectrum")
    eig_path = _stem(base) + "_eigenvalues." + args.format
    eig_rows = []
    any_bound = False
    for mq in mqs:
        sol = solve_bound_states_rho(profile, mq, rho_max=args.rho_max,
                                     n_nodes=n, n_states=args.states)
        prefix = "" if len(mqs) == 1 else "mq%d_" % mq
        metrics[prefix + "bound_count"] = sol.bound_count
        for i, energy in enumerate(sol.eigenvalues):
            any_bound = True
            eig_rows.append((mq, i, energy))
            metrics["%se%d" % (prefix, i)] = float(energy)
            spath = "%s_mq%d_state%d.%s" % (_stem(base), mq, i,
                                            args.format)
            _write_table(spath, ["rho", "x", "psi"],
                         list(zip(sol.grid_rho, sol.grid_x,
                                  np.real(sol.wavefunctions[i].psi))),
                         args.format)
            outputs.append(spath)
        if args.plot and sol.bound_count:
            from .plots import save_spectrum_plot
            outputs.append(save_spectrum_plot(
                sol, "%s_mq%d.png" % (_stem(base), mq)))
    _write_table(eig_path, ["mq", "index", "energy"], eig_rows,
                 args.format)
    outputs.insert(0, eig_path)
    if args.surface == "gaussian":
        metrics["near_origin_depth"] = -(args.a0 ** 2 / args.sigma0 ** 4)
    status = "ok" if any_bound else "no_result"
    return metrics, outputs, status, {}


def _run_density(args):
    profile = _resolve_profile(args)
    if args.ansatz:
        if args.surface != "gaussian":
            raise ValueError("--ansatz needs --surface gaussian")
        state = ansatz_wavefunction(profile, args.kprime)
        pairs = probability_density(state)
    else:
        sol = solve_bound_states_rho(profile, args.mq,
                                     rho_max=args.rho_max,
                                     n_nodes=args.nodes or 8000,
                                     n_states=max(args.states, 1))
        if sol.bound_count == 0:
            return {"bound_count": 0}, [], "no_result", {}
        pairs = probability_density(sol, 0)
    path = _data_path(args, "density")
    _write_table(path, ["rho", "density"], pairs, args.format)
    outputs = [path]
    if args.plot:
        from .plots import save_density_plot
        outputs.append(save_density_plot(pairs, _stem(path) + ".png"))
    rho = np.array([p[0] for p in pairs])
    dens = np.array([p[1] for p in pairs])
    metrics = {"integral_2pi": float(2.0 * math.pi * simpson(dens, x=rho)),
               "peak_rho": float(rho[int(np.argmax(dens))])}
    return metrics, outputs, "ok", {}


def _run_current(args):
    profile = _resolve_profile(args)
    sol = solve_bound_states_rho(profile, args.mq, rho_max=args.rho_max,
                                 n_nodes=args.nodes or 8000,
                                 n_states=max(args.states, 1))
    if sol.bound_count == 0:
        return {"bound_count": 0}, [], "no_result", {}
    cur = probability_current(sol, 0)
    path = _data_path(args, "current")
    _write_table(path, ["rho", "j_phi", "j_rho", "circulation"],
                 [(r, jp, jr, c) for (r, jp, jr), c
                  in zip(cur.nodes, cur.circulation)], args.format)
    outputs = [path]
    if args.plot:
        from .plots import save_current_plot
        outputs.append(save_current_plot(cur, _stem(path) + ".png"))
    metrics = {"mq": cur.mq, "j_z": cur.j_z,
               "circulation_peak": float(np.max(cur.circulation))}
    return metrics, outputs, "ok", {}


def _run_inverse(args):
    pot = _resolve_potential(args)
    design = design_profile(pot, args.mq, n_nodes=args.nodes or 400,
                            rho_ref=args.rho_ref)
    err = round_trip_error(design, amplitude_cap=0.99)
    path = _data_path(args, "inverse")
    rows = [(r, a, f, df) for (r, a), (_, f), (_, df)
            in zip(design.amplitude_table, design.profile_table,
                   design.slope_table)]
    _write_table(path, ["rho", "A", "f", "df"], rows, args.format)
    meta_path = _stem(path) + "_design.json"
    _write_json(meta_path, {
        "strip": _strip_json(design.strip, design.mq, pot.kind),
        "sign_choice": list(design.sign_choice),
        "n_nodes": len(design.profile_table),
        "round_trip_error_capped": err,
    })
    outputs = [path, meta_path]
    if args.plot:
        from .plots import save_design_plot
        outputs.append(save_design_plot(design, _stem(path) + ".png"))
    metrics = {"rho_lower": design.strip.rho_lower,
               "rho_upper": design.strip.rho_upper,
               "round_trip_error_capped": err}
    return metrics, outputs, "ok", {}


def _run_strip(args):
    pot = _resolve_potential(args)
    mqs = _mq_values(args)
    strips = []
    metrics = {}
    for mq in mqs:
        strip = strip_bounds(pot, mq, rho_ref=args.rho_ref,
                             second_strip=args.second_strip)
        strips.append(_strip_json(strip, mq, pot.kind))
        key = "" if len(mqs) == 1 else "_mq%d" % mq
        metrics["rho_lower" + key] = strip.rho_lower
        metrics["rho_upper" + key] = strip.rho_upper
    outputs = []
    if args.out:
        _write_json(args.out, strips[0] if len(strips) == 1
                    else {"strips": strips})
        outputs.append(args.out)
    if args.plot:
        from .plots import save_strip_plot
        first = strips[0]
        ref = first["rho_lower"]
        grid = np.linspace(first["rho_lower"], first["rho_upper"], 50)
        pairs = [(float(r), amplitude(pot, mqs[0], ref, float(r)))
                 for r in grid]
        from .inverse import StripBounds
        sb = StripBounds(first["rho_lower"], first["rho_upper"],
                         first["lower_criterion"],
                         first["upper_criterion"])
        png = (_stem(args.out) if args.out else "strip") + ".png"
        outputs.append(save_strip_plot(sb, pairs, png))
    extra = {"strip": strips[0]} if len(strips) == 1 else \
        {"strips": strips}
    return metrics, outputs, "ok", extra


def _run_roundtrip(args):
    pot = _resolve_potential(args)
    design = design_profile(pot, args.mq, n_nodes=args.nodes or 400,
                            rho_ref=args.rho_ref)
    full = round_trip_error(design)
    capped = round_trip_error(design, amplitude_cap=0.99)
    outputs = []
    if args.out or args.plot:
        from .inverse import design_to_profile
        prof = design_to_profile(design)
        rows = []
        for rho, a_val in design.amplitude_table[1:-1]:
            u = float(pot.evaluate(rho))
            w = effective_potential(prof, design.mq, rho)
            rows.append((rho, a_val, abs(w + u) / max(1.0, abs(u))))
        if args.out:
            _write_table(args.out, ["rho", "A", "residual"], rows,
                         args.format)
            outputs.append(args.out)
        if args.plot:
            from .plots import save_roundtrip_plot
            png = (_stem(args.out) if args.out else "roundtrip") + ".png"
            outputs.append(save_roundtrip_plot(
                [r[0] for r in rows], [r[2] for r in rows], png))
    metrics = {"round_trip_error": full,
               "round_trip_error_capped": capped}
    return metrics, outputs, "ok", {}


_RUNNERS = {
    "curvature": _run_curvature,
    "potential": _run_potential,
    "spectrum": _run_spectrum,
    "density": _run_density,
    "current": _run_current,
    "inverse": _run_inverse,
    "strip": _run_strip,
    "roundtrip": _run_roundtrip,
}


def _add_surface_options(p):
    p.add_argument("--surface", choices=["gaussian", "table"],
                   default="gaussian")
    p.add_argument("--a0", type=float, default=1.0)
    p.add_argument("--sigma0", type=float, default=1.0)
    p.add_argument("--profile-csv", dest="profile_csv")


def _add_potential_options(p):
    p.add_argument("--potential", choices=["free", "harmonic", "table"],
                   required=True)
    p.add_argument("--omega", type=float)
    p.add_argument("--potential-csv", dest="potential_csv")
    p.add_argument("--rho-ref", dest="rho_ref", type=float)


def _add_common(p, mq_range=False):
    p.add_argument("--mq", type=int, default=0)
    if mq_range:
        p.add_argument("--mq-range", dest="mq_range")
    p.add_argument("--rho-max", dest="rho_max", type=float)
    p.add_argument("--nodes", type=int)
    p.add_argument("--states", type=int, default=6)
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--plot", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvebound",
        description="curvature-induced potentials on surfaces of "
                    "revolution: spectra and inverse design")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    for name in ("curvature", "potential", "spectrum"):
        p = sub.add_parser(name)
        _add_surface_options(p)
        _add_common(p, mq_range=(name != "curvature"))

    p = sub.add_parser("density")
    _add_surface_options(p)
    _add_common(p)
    p.add_argument("--ansatz", action="store_true")
    p.add_argument("--kprime", type=float, default=5.0)

    p = sub.add_parser("current")
    _add_surface_options(p)
    _add_common(p)

    for name in ("inverse", "roundtrip"):
        p = sub.add_parser(name)
        _add_potential_options(p)
        _add_common(p)

    p = sub.add_parser("strip")
    _add_potential_options(p)
    _add_common(p, mq_range=True)
    p.add_argument("--second-strip", dest="second_strip",
                   action="store_true")

    return parser


def _echo_inputs(args) -> dict:
    skip = {"subcommand"}
    out = {}
    for key, val in sorted(vars(args).items()):
        if key in skip or val is None:
            continue
        out[key] = val
    return out


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    summary = {
        "subcommand": args.subcommand,
        "units": "hbar=1, 2m=1",
        "inputs": _echo_inputs(args),
        "outputs": [],
        "metrics": {},
        "status": "ok",
    }
    code = 0
    try:
        metrics, outputs, status, extra = _RUNNERS[args.subcommand](args)
        summary["metrics"] = metrics
        summary["outputs"] = outputs
        summary["status"] = status
        summary.update(extra)
        if status == "no_result":
            code = 1
    except AdmissibleRegionError as exc:
        summary["status"] = "no_result"
        summary["message"] = str(exc)
        code = 1
    except (QuadratureError, ArithmeticError,
            np.linalg.LinAlgError) as exc:
        summary["status"] = "error(%s)" % exc
        code = 3
    except ValueError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 2
    print(json.dumps(summary, sort_keys=True, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
