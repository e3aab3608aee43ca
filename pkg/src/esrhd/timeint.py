"""SSP-RK3 stepping, CFL time-step selection, and the run loop."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional

import numpy as np

from .scheme import (BoundaryCondition, Field, Grid, SchemeConfig, make_boundary,
                     make_field, semidiscrete_rhs, sync_primitives)
from .state import EosParams, NonPhysicalState, char_speeds, entropy_quantities


@dataclass
class TimeControls:
    t_end: float
    cfl: float = 0.4
    accuracy_mode: bool = False
    max_steps: int = 10_000_000
    # Ramp factor min(1, (step+1)/startup_steps) on the first steps: discontinuous
    # initial data otherwise drives near-vacuum cells inadmissible while the
    # jump regularizes.  Zero disables the ramp.
    startup_steps: int = 10

    def __post_init__(self):
        if not 0.0 < self.cfl <= 1.0:
            raise ValueError("CFL number must lie in (0, 1]")


@dataclass
class EntropyTrace:
    """Per-step samples of (t, total entropy)."""

    samples: list = dc_field(default_factory=list)

    def append(self, t: float, eta_total: float) -> None:
        if self.samples and t <= self.samples[-1][0]:
            raise ValueError("entropy trace times must be strictly increasing")
        self.samples.append((t, eta_total))

    def times(self) -> np.ndarray:
        return np.array([s[0] for s in self.samples])

    def values(self) -> np.ndarray:
        return np.array([s[1] for s in self.samples])


@dataclass
class RunResult:
    field: Field
    trace: EntropyTrace
    steps: int


def total_entropy(fld: Field, eos: EosParams) -> float:
    eta = entropy_quantities(fld.interior_prim(), eos).eta
    return float(np.sum(eta) * fld.grid.cell_volume)


def compute_dt(fld: Field, cfg: SchemeConfig, controls: TimeControls) -> float:
    """CFL time step from the largest signal speeds; accuracy mode caps it by
    CFL * dx^(5/3) so the spatial error dominates."""
    grid = fld.grid
    w = fld.interior_prim()
    lam_x = float(np.max(np.abs(char_speeds(w, cfg.eos, 0))))
    if grid.d == 1:
        dt = controls.cfl * grid.dx / lam_x
        cap = controls.cfl * grid.dx ** (5.0 / 3.0)
    else:
        lam_y = float(np.max(np.abs(char_speeds(w, cfg.eos, 1))))
        dt = controls.cfl / (lam_x / grid.dx + lam_y / grid.dy)
        cap = controls.cfl * min(grid.dx, grid.dy) ** (5.0 / 3.0)
    if controls.accuracy_mode:
        dt = min(dt, cap)
    if not dt > 0.0:
        raise NonPhysicalState("non-positive time step")
    return dt


def rk3_step(U: np.ndarray, dt: float, rhs: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """One step of the three-stage third-order SSP Runge-Kutta scheme."""
    def stage(k, expr):
        try:
            return expr()
        except NonPhysicalState as exc:
            raise NonPhysicalState(f"stage {k}: {exc}") from None

    U1 = stage(1, lambda: U + dt * rhs(U))
    U2 = stage(2, lambda: 0.75 * U + 0.25 * (U1 + dt * rhs(U1)))
    return stage(3, lambda: U / 3.0 + (2.0 / 3.0) * (U2 + dt * rhs(U2)))


def run(problem, grid: Grid, cfg: SchemeConfig, controls: TimeControls,
        snapshot_dt: Optional[float] = None,
        on_snapshot: Optional[Callable[[float, Field], None]] = None) -> RunResult:
    """Advance ``problem`` to t_end on ``grid``; samples total entropy each step.

    Steps are clipped to land exactly on t_end and on snapshot times.  Raises
    on NonPhysicalState or when max_steps is exceeded.
    """
    fld = make_field(grid, problem.ic, cfg.eos)
    bc = make_boundary(grid, problem.bc_kinds, ic=problem.ic, eos=cfg.eos)
    t_end = controls.t_end
    trace = EntropyTrace()
    trace.append(0.0, total_entropy(fld, cfg.eos))
    if on_snapshot is not None:
        on_snapshot(0.0, fld)

    def rhs(U):
        fld.set_interior_U(U)
        return semidiscrete_rhs(fld, cfg, bc)

    t = 0.0
    steps = 0
    snap_k = 1
    while t < t_end:
        if steps >= controls.max_steps:
            raise RuntimeError(f"max_steps={controls.max_steps} exceeded at t={t}")
        dt = compute_dt(fld, cfg, controls)
        if controls.startup_steps and steps < controls.startup_steps:
            dt *= (steps + 1) / controls.startup_steps
        target = t_end
        if snapshot_dt is not None:
            target = min(target, snap_k * snapshot_dt)
        if t + dt >= target:
            dt = target - t
            t_next = target
        else:
            t_next = t + dt
        U_new = rk3_step(fld.interior_U().copy(), dt, rhs)
        fld.set_interior_U(U_new)
        sync_primitives(fld, cfg.eos)
        t = t_next
        steps += 1
        trace.append(t, total_entropy(fld, cfg.eos))
        if snapshot_dt is not None and t == snap_k * snapshot_dt:
            if on_snapshot is not None and t != t_end:
                on_snapshot(t, fld)
            snap_k += 1
    if on_snapshot is not None and t_end > 0.0:
        on_snapshot(t_end, fld)
    return RunResult(fld, trace, steps)
