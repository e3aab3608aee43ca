"""Command-line driver: benchmark runs, convergence sweeps, references, CSV output.

Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .bench import (convergence_study, catalogue, get_problem, problem_grid,
                    reference_solution, scheme_config, schlieren)
from .eigen import DissipationKind
from .scheme import FluxMode, Grid
from .state import EosParams, NonPhysicalState, PrimState, prim_to_cons
from .timeint import TimeControls, run


class UsageError(Exception):
    pass


_FLUX = {"ec": FluxMode.EC, "es": FluxMode.ES, "llf": FluxMode.LLF1}
_DISS = {"roe": DissipationKind.ROE, "lf": DissipationKind.LAX_FRIEDRICHS}

# keys accepted in a config file; identical to the long flag spellings
_FILE_KEYS = {"problem", "n", "ny", "flux", "diss", "cfl", "t-end", "out",
              "snap-dt", "accuracy-dt", "fine-n", "bubble-rho"}


@dataclass
class RunConfig:
    command: str
    problem: Optional[str] = None
    n: Optional[int] = None
    ny: Optional[int] = None
    flux: str = "es"
    diss: str = "lf"
    cfl: float = 0.4
    t_end: Optional[float] = None
    out: str = "out"
    snap_dt: Optional[float] = None
    accuracy_dt: bool = False
    fine_n: Optional[int] = None
    bubble_rho: float = 0.1358
    resolutions: Optional[tuple] = None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_common(p):
    p.add_argument("--problem", type=str)
    p.add_argument("--n", type=str, help="resolution (comma list for converge)")
    p.add_argument("--ny", type=int)
    p.add_argument("--flux", choices=sorted(_FLUX))
    p.add_argument("--diss", choices=sorted(_DISS))
    p.add_argument("--cfl", type=float)
    p.add_argument("--t-end", dest="t_end", type=float)
    p.add_argument("--out", type=str)
    p.add_argument("--snap-dt", dest="snap_dt", type=float)
    p.add_argument("--accuracy-dt", dest="accuracy_dt", action="store_const", const=True)
    p.add_argument("--fine-n", dest="fine_n", type=int)
    p.add_argument("--bubble-rho", dest="bubble_rho", type=float)
    p.add_argument("--config", type=str)


def build_parser() -> _Parser:
    parser = _Parser(prog="esrhd", description="entropy stable RHD benchmark driver")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("run", "converge", "reference", "list"):
        _add_common(sub.add_parser(name))
    return parser


def _load_config_file(path: str) -> dict:
    text = Path(path).read_text()
    data = {}
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{ln}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _FILE_KEYS:
            raise UsageError(f"{path}:{ln}: unknown config key {key!r}")
        data[key] = value
    return data


def _coerce(key: str, value: str):
    if key in ("n",):
        return value
    if key in ("ny", "fine-n"):
        return int(value)
    if key in ("cfl", "t-end", "snap-dt", "bubble-rho"):
        return float(value)
    if key == "accuracy-dt":
        low = value.lower()
        if low in ("true", "1", "yes"):
            return True
        if low in ("false", "0", "no"):
            return False
        raise UsageError(f"config key accuracy-dt must be boolean, got {value!r}")
    return value


def parse_config(argv=None) -> RunConfig:
    """Parse CLI arguments and an optional config file; flags win over the file."""
    ns = build_parser().parse_args(argv)
    merged = {}
    if ns.config:
        try:
            file_values = _load_config_file(ns.config)
        except FileNotFoundError:
            raise UsageError(f"config file not found: {ns.config}")
        for key, value in file_values.items():
            merged[key.replace("-", "_")] = _coerce(key, value)
    for key in ("problem", "n", "ny", "flux", "diss", "cfl", "t_end", "out",
                "snap_dt", "accuracy_dt", "fine_n", "bubble_rho"):
        cli_val = getattr(ns, key)
        if cli_val is not None:
            merged[key] = cli_val

    cfg = RunConfig(command=ns.command)
    n_raw = merged.pop("n", None)
    for key, value in merged.items():
        setattr(cfg, key, value)
    if n_raw is not None:
        parts = [p for p in str(n_raw).split(",") if p]
        try:
            values = tuple(int(p) for p in parts)
        except ValueError:
            raise UsageError(f"--n expects integers, got {n_raw!r}")
        if not values:
            raise UsageError("--n given without a value")
        cfg.n = values[0]
        cfg.resolutions = values
    if cfg.flux not in _FLUX:
        raise UsageError(f"unknown flux mode {cfg.flux!r}")
    if cfg.diss not in _DISS:
        raise UsageError(f"unknown dissipation kind {cfg.diss!r}")
    if cfg.command != "list":
        if cfg.problem is None:
            raise UsageError("--problem is required")
        names = {s.name for s in catalogue()}
        if cfg.problem not in names:
            raise UsageError(f"unknown problem {cfg.problem!r}; see `esrhd list`")
    return cfg


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def emit_snapshot(w: PrimState, grid: Grid, eos: EosParams, path: Path) -> None:
    """CSV snapshot of primitive and conserved fields, rows x-major ascending."""
    U = prim_to_cons(w, eos)
    lines = []
    if grid.d == 1:
        lines.append("x,rho,u,p,D,m,E")
        x = grid.centers(0)
        for i in range(grid.nx):
            vals = (x[i], w.rho[i], w.vel[0][i], w.p[i], U.D[i], U.mom[0][i], U.E[i])
            lines.append(",".join(_fmt(v) for v in vals))
    else:
        lines.append("x,y,rho,u,v,p,D,mx,my,E")
        x, y = grid.centers(0), grid.centers(1)
        for i in range(grid.nx):
            for j in range(grid.ny):
                vals = (x[i], y[j], w.rho[i, j], w.vel[0][i, j], w.vel[1][i, j],
                        w.p[i, j], U.D[i, j], U.mom[0][i, j], U.mom[1][i, j], U.E[i, j])
                lines.append(",".join(_fmt(v) for v in vals))
    Path(path).write_text("\n".join(lines) + "\n")


def emit_schlieren(w: PrimState, grid: Grid, path: Path) -> None:
    s = schlieren(w.rho, grid)
    x, y = grid.centers(0), grid.centers(1)
    lines = ["x,y,schlieren"]
    for i in range(grid.nx):
        for j in range(grid.ny):
            lines.append(f"{_fmt(x[i])},{_fmt(y[j])},{_fmt(s[i, j])}")
    Path(path).write_text("\n".join(lines) + "\n")


def emit_entropy_trace(trace, path: Path) -> None:
    lines = ["t,total_entropy"]
    for t, eta in trace.samples:
        lines.append(f"{_fmt(t)},{_fmt(eta)}")
    Path(path).write_text("\n".join(lines) + "\n")


def emit_convergence_table(rows, path: Path) -> None:
    lines = ["n,l1,order1,l2,order2,linf,orderinf"]
    for row in rows:
        orders = [("" if o is None else _fmt(o))
                  for o in (row.order_l1, row.order_l2, row.order_linf)]
        lines.append(f"{row.n},{_fmt(row.err_l1)},{orders[0]},{_fmt(row.err_l2)},"
                     f"{orders[1]},{_fmt(row.err_linf)},{orders[2]}")
    Path(path).write_text("\n".join(lines) + "\n")


def write_manifest(entries: dict, path: Path) -> None:
    lines = [f"{k}={v}" for k, v in entries.items()]
    Path(path).write_text("\n".join(lines) + "\n")


def _manifest_base(cfg: RunConfig, spec=None) -> dict:
    entries = {
        "tool": "esrhd",
        "version": __version__,
        "command": cfg.command,
        "problem": cfg.problem,
        "n": cfg.n if cfg.command != "converge" else ",".join(map(str, cfg.resolutions or ())),
        "ny": cfg.ny,
        "flux": cfg.flux,
        "diss": cfg.diss,
        "cfl": cfg.cfl,
        "t_end": cfg.t_end,
        "snap_dt": cfg.snap_dt,
        "accuracy_dt": cfg.accuracy_dt,
        "fine_n": cfg.fine_n,
        "bubble_rho": cfg.bubble_rho,
    }
    if spec is not None:
        entries["gamma"] = spec.gamma
        entries["t_end_effective"] = cfg.t_end if cfg.t_end is not None else spec.t_end
    return entries


def _cmd_run(cfg: RunConfig) -> int:
    spec = get_problem(cfg.problem, cfg.bubble_rho)
    # --ny falls back to --n for square 2D grids; omit both for the defaults
    grid = problem_grid(spec, cfg.n, cfg.ny if cfg.ny is not None else cfg.n)
    scfg = scheme_config(spec, _FLUX[cfg.flux], _DISS[cfg.diss])
    t_end = cfg.t_end if cfg.t_end is not None else spec.t_end
    controls = TimeControls(t_end=t_end, cfl=cfg.cfl, accuracy_mode=cfg.accuracy_dt)
    outdir = Path(cfg.out)
    outdir.mkdir(parents=True, exist_ok=True)

    snapshots = []

    def on_snapshot(t, fld):
        k = len(snapshots)
        path = outdir / f"snapshot_{k:04d}.csv"
        emit_snapshot(fld.interior_prim(), grid, scfg.eos, path)
        if grid.d == 2:
            emit_schlieren(fld.interior_prim(), grid, outdir / f"schlieren_{k:04d}.csv")
        snapshots.append((t, path.name))

    t0 = time.perf_counter()
    result = run(spec, grid, scfg, controls,
                 snapshot_dt=cfg.snap_dt, on_snapshot=on_snapshot)
    wall = time.perf_counter() - t0
    emit_entropy_trace(result.trace, outdir / "entropy.csv")

    entries = _manifest_base(cfg, spec)
    entries.update({"nx_effective": grid.nx, "ny_effective": grid.ny,
                    "steps": result.steps, "wall_time_s": f"{wall:.3f}"})
    for k, (t, name) in enumerate(snapshots):
        entries[f"snapshot_{k:04d}"] = f"{name}@t={_fmt(t)}"
    write_manifest(entries, outdir / "manifest.txt")
    print(f"run complete: {result.steps} steps, output in {outdir}")
    return 0


def _cmd_converge(cfg: RunConfig) -> int:
    if not cfg.resolutions or len(cfg.resolutions) < 1:
        raise UsageError("converge needs --n with one or more resolutions")
    spec = get_problem(cfg.problem, cfg.bubble_rho)
    if cfg.t_end is not None:
        spec.t_end = cfg.t_end
    outdir = Path(cfg.out)
    outdir.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()
    # accuracy sweeps always cap dt by CFL*dx^(5/3) so the spatial error dominates
    rows = convergence_study(spec, cfg.resolutions, _FLUX[cfg.flux], cfl=cfg.cfl,
                             accuracy_mode=True)
    wall = time.perf_counter() - t0
    emit_convergence_table(rows, outdir / "convergence.csv")
    errs = [row.err_l1 for row in rows]
    monotone = all(b < a for a, b in zip(errs, errs[1:]))
    entries = _manifest_base(cfg, spec)
    entries.update({"steps": "", "wall_time_s": f"{wall:.3f}",
                    "monotone_l1_decrease": monotone})
    write_manifest(entries, outdir / "manifest.txt")
    for row in rows:
        o = "-" if row.order_l1 is None else f"{row.order_l1:.2f}"
        print(f"N={row.n:6d}  l1={row.err_l1:.3e}  order={o}")
    return 0


def _cmd_reference(cfg: RunConfig) -> int:
    if cfg.fine_n is None:
        raise UsageError("reference needs --fine-n")
    spec = get_problem(cfg.problem, cfg.bubble_rho)
    if cfg.t_end is not None:
        spec.t_end = cfg.t_end
    outdir = Path(cfg.out)
    outdir.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()
    w, coarse = reference_solution(spec, cfg.fine_n, cfg.n, cfl=cfg.cfl)
    wall = time.perf_counter() - t0
    emit_snapshot(w, coarse, EosParams(spec.gamma), outdir / "reference.csv")
    entries = _manifest_base(cfg, spec)
    entries.update({"nx_effective": coarse.nx, "wall_time_s": f"{wall:.3f}"})
    write_manifest(entries, outdir / "manifest.txt")
    print(f"reference written to {outdir / 'reference.csv'}")
    return 0


def _cmd_list(cfg: RunConfig) -> int:
    for spec in catalogue(cfg.bubble_rho):
        dom = f"[{spec.xlim[0]:g},{spec.xlim[1]:g}]"
        if spec.d == 2:
            dom += f"x[{spec.ylim[0]:g},{spec.ylim[1]:g}]"
        n = f"{spec.default_nx}" + (f"x{spec.default_ny}" if spec.d == 2 else "")
        print(f"{spec.name:8s} {spec.d}D  gamma={spec.gamma:<8.6g} t_end={spec.t_end:<6g} "
              f"N={n:9s} {dom:20s} {spec.description}")
    return 0


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    try:
        handler = {"run": _cmd_run, "converge": _cmd_converge,
                   "reference": _cmd_reference, "list": _cmd_list}[cfg.command]
        return handler(cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except NonPhysicalState as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
