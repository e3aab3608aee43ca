#!/usr/bin/env python3
"""Run the 1D Riemann-type benchmarks with matching fine-mesh references.

Writes paired CSV files (numeric vs first-order local Lax-Friedrichs
reference) ready for overlay plotting.
"""

import argparse
from pathlib import Path

from esrhd.bench import get_problem, problem_grid, reference_solution, scheme_config
from esrhd.cli import emit_snapshot
from esrhd.scheme import FluxMode
from esrhd.state import EosParams
from esrhd.timeint import TimeControls, run

CASES = {
    "rp1": (400, 8000),
    "rp2": (400, 8000),
    "rp3": (400, 8000),
    "rp4": (400, 8000),
    "dp": (400, 10000),
    "blast": (4000, 16000),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("out/riemann"))
    ap.add_argument("--cases", type=str, default=",".join(CASES))
    ap.add_argument("--diss", choices=("roe", "lf"), default="lf")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    from esrhd.eigen import DissipationKind
    diss = DissipationKind.ROE if args.diss == "roe" else DissipationKind.LAX_FRIEDRICHS

    for name in args.cases.split(","):
        n, fine = CASES[name]
        spec = get_problem(name)
        grid = problem_grid(spec, n)
        eos = EosParams(spec.gamma)
        print(f"== {name}: N={n}, reference N={fine}, t={spec.t_end} ==")
        result = run(spec, grid, scheme_config(spec, FluxMode.ES, diss),
                     TimeControls(t_end=spec.t_end))
        emit_snapshot(result.field.interior_prim(), grid, eos,
                      args.out / f"{name}_es_n{n}.csv")
        ref, ref_grid = reference_solution(spec, fine, n)
        emit_snapshot(ref, ref_grid, eos, args.out / f"{name}_ref_n{fine}.csv")
        print(f"   {result.steps} steps; files {name}_es_n{n}.csv, {name}_ref_n{fine}.csv")


if __name__ == "__main__":
    main()
