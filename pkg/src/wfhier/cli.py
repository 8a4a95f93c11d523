"""Batch command-line front end: solve | moments | mc | check."""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .checks import run_standard_suites
from .hierarchy import extend, moment_profile, solution_to_json
from .moments import (initial_moments_from_poly, solve_moment_ode,
                      trajectory_to_csv_rows, multi_indices)
from .montecarlo import WfConfig, run
from .poly import PolyParseError, SimplexPolynomial
from .simplex import SimplexSizeError, chart_of

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VALIDATION = 3

DEFAULTS = {
    "t": "1.0",
    "moments": 2,
    "mode": "double",
    "seed": 0,
    "paths": 10000,
    "pop_size": 1000,
    "format": "json",
    "grid": 10,
    "out": "wfhier_out",
}


class InputError(ValueError):
    pass


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wfhier",
                                 description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("solve", "moments", "mc", "check"):
        p = sub.add_parser(name)
        p.add_argument("--n", type=int)
        p.add_argument("--f", type=str, help="initial density polynomial")
        p.add_argument("--t", type=str, help="comma-separated time values")
        p.add_argument("--moments", type=int, help="max moment order")
        p.add_argument("--mode", choices=["rational", "double"])
        p.add_argument("--seed", type=int)
        p.add_argument("--paths", type=int)
        p.add_argument("--pop-size", type=int, dest="pop_size")
        p.add_argument("--out", type=str)
        p.add_argument("--format", choices=["json", "csv"])
        p.add_argument("--grid", type=int, help="grid points per chart axis")
        p.add_argument("--config", type=str, help="JSON file with defaults")
        p.add_argument("--explain", action="store_true",
                       help="print effective settings and exit")
    return ap


def _effective(args) -> dict:
    cfg = dict(DEFAULTS)
    if args.config:
        try:
            cfg.update(json.loads(Path(args.config).read_text()))
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"bad config file: {exc}")
    for key in ("n", "f", "t", "moments", "mode", "seed", "paths",
                "pop_size", "out", "format", "grid"):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    return cfg


def _require(cfg, *keys):
    for k in keys:
        if cfg.get(k) is None:
            raise InputError(f"missing required option --{k}")


def _parse_times(spec: str) -> list[float]:
    try:
        ts = [float(x) for x in str(spec).split(",") if x != ""]
    except ValueError as exc:
        raise InputError(f"bad time list {spec!r}: {exc}")
    if not ts or any(t < 0 for t in ts):
        raise InputError("times must be a nonempty list of nonnegative reals")
    return ts


def _parse_f(cfg) -> SimplexPolynomial:
    try:
        return SimplexPolynomial.parse(cfg["f"], cfg["n"])
    except PolyParseError as exc:
        raise InputError(str(exc))


def _chart_grid(dim: int, per_axis: int):
    """Lattice points of the closed standard simplex of a chart."""
    if dim == 0:
        return [()]
    pts = []

    def rec(prefix, remaining, budget):
        if remaining == 1:
            for i in range(budget + 1):
                pts.append(prefix + (i / per_axis,))
            return
        for i in range(budget + 1):
            rec(prefix + (i / per_axis,), remaining - 1, budget - i)

    rec((), dim, per_axis)
    return pts


def cmd_solve(cfg) -> int:
    _require(cfg, "n", "f")
    f = _parse_f(cfg)
    ts = _parse_times(cfg["t"])
    U = extend(f, cfg["n"], mode=cfg["mode"])
    outdir = Path(cfg["out"])
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / "solution.json").write_text(
        json.dumps(solution_to_json(U), indent=2))
    with open(outdir / "densities.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["face", "t", "coords", "density"])
        for face in U.lattice.faces:
            fs = U.per_face[face]
            for t in ts:
                dens = fs.density_poly(t)
                for pt in _chart_grid(face.dim, cfg["grid"]):
                    w.writerow([str(face), t,
                                ";".join(f"{c:g}" for c in pt),
                                float(dens.evaluate(pt))])
    with open(outdir / "moments.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "alpha", "value"])
        for alpha in multi_indices(cfg["n"], cfg["moments"]):
            prof = moment_profile(U, alpha)
            for t in ts:
                w.writerow([t, ";".join(str(a) for a in alpha), prof.at(t)])
    print(f"wrote solution.json, densities.csv, moments.csv to {outdir}")
    return EXIT_OK


def cmd_moments(cfg) -> int:
    _require(cfg, "n", "f")
    f = _parse_f(cfg)
    ts = _parse_times(cfg["t"])
    init = initial_moments_from_poly(f, cfg["n"], cfg["moments"])
    traj = solve_moment_ode(init, cfg["n"], cfg["moments"])
    rows = trajectory_to_csv_rows(traj, ts)
    outdir = Path(cfg["out"])
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / "moment_trajectories.csv"
    with open(path, "w", newline="") as fh:
        csv.writer(fh).writerows(rows)
    print(f"wrote {path}")
    return EXIT_OK


def cmd_mc(cfg) -> int:
    _require(cfg, "n", "f")
    f = _parse_f(cfg)
    ts = _parse_times(cfg["t"])
    config = WfConfig(n=cfg["n"], pop_size=cfg["pop_size"],
                      horizon_t=ts[-1], paths=cfg["paths"], seed=cfg["seed"],
                      initial_density=f.scale(
                          1 / f.simplex_integral() if f.simplex_integral() else 1),
                      max_moment_order=cfg["moments"])
    report = run(config)
    outdir = Path(cfg["out"])
    outdir.mkdir(parents=True, exist_ok=True)
    data = report.to_json()
    if cfg["format"] == "json":
        path = outdir / "mc_report.json"
        path.write_text(json.dumps(data, indent=2))
    else:
        path = outdir / "mc_report.csv"
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["kind", "key", "value", "se"])
            for k, v in data["moments"].items():
                w.writerow(["moment", k, v, data["moment_se"][k]])
            for k, v in data["occupancy"].items():
                w.writerow(["occupancy", k, v, data["occupancy_se"][k]])
    print(f"wrote {path}")
    return EXIT_OK


def cmd_check(cfg) -> int:
    _require(cfg, "n", "f")
    f = _parse_f(cfg)
    mode = cfg["mode"]
    results = run_standard_suites(f, cfg["n"], mode=mode,
                                  max_order=cfg["moments"])
    failed = 0
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"[{status}] {r.suite:<26} {r.name:<24} "
              f"residual={r.residual:.3e} tol={r.tol:g}")
        failed += not r.ok
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_VALIDATION


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _effective(args)
        if args.explain:
            for k in sorted(cfg):
                print(f"{k} = {cfg[k]}")
            return EXIT_OK
        handler = {"solve": cmd_solve, "moments": cmd_moments,
                   "mc": cmd_mc, "check": cmd_check}[args.command]
        return handler(cfg)
    except (InputError, PolyParseError, SimplexSizeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
