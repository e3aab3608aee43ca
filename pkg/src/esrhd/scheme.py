"""Grid storage, ghost-cell boundary conditions, and the semi-discrete RHS.

Three interface flux modes are supported: entropy conservative (6th-order
combination, no dissipation), entropy stable (6th-order combination plus the
sign-gated WENO5 dissipation in scaled entropy variables), and a first-order
local Lax-Friedrichs reference scheme.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .ecflux import ec_flux_high_order
from .eigen import (DissipationKind, dissipation_speeds, interface_average,
                    scaled_eigensystem_1d, scaled_eigensystem_2d)
from .means import StatePair
from .state import (ConsState, EosParams, NonPhysicalState, PrimState,
                    cons_to_prim, entropy_quantities, max_signal_speed,
                    physical_flux, prim_to_cons)
from .weno import scaled_variable_jumps

GHOST = 3  # covers the 6-point EC stencil and the WENO5 stencils


class FluxMode(Enum):
    EC = "ec"
    ES = "es"
    LLF1 = "llf1"


BC_KINDS = ("periodic", "outflow", "dirichlet", "reflective")


@dataclass(frozen=True)
class Grid:
    d: int
    nx: int
    dx: float
    x0: float
    ny: Optional[int] = None
    dy: Optional[float] = None
    y0: Optional[float] = None
    ghost: int = GHOST

    @classmethod
    def make_1d(cls, x0: float, x1: float, nx: int) -> "Grid":
        return cls(d=1, nx=nx, dx=(x1 - x0) / nx, x0=x0)

    @classmethod
    def make_2d(cls, xlim, ylim, nx: int, ny: int) -> "Grid":
        return cls(d=2, nx=nx, dx=(xlim[1] - xlim[0]) / nx, x0=xlim[0],
                   ny=ny, dy=(ylim[1] - ylim[0]) / ny, y0=ylim[0])

    def size(self, axis: int) -> int:
        return self.nx if axis == 0 else self.ny

    def spacing(self, axis: int) -> float:
        return self.dx if axis == 0 else self.dy

    def centers(self, axis: int, padded: bool = False) -> np.ndarray:
        n, dx, x0 = self.size(axis), self.spacing(axis), (self.x0 if axis == 0 else self.y0)
        if padded:
            i = np.arange(-self.ghost, n + self.ghost)
        else:
            i = np.arange(n)
        return x0 + (i + 0.5) * dx

    @property
    def cell_volume(self) -> float:
        return self.dx if self.d == 1 else self.dx * self.dy

    @property
    def interior_shape(self) -> tuple:
        return (self.nx,) if self.d == 1 else (self.nx, self.ny)

    @property
    def padded_shape(self) -> tuple:
        g2 = 2 * self.ghost
        if self.d == 1:
            return (self.nx + g2,)
        return (self.nx + g2, self.ny + g2)


@dataclass
class SchemeConfig:
    flux_mode: FluxMode = FluxMode.ES
    dissipation: DissipationKind = DissipationKind.LAX_FRIEDRICHS
    eos: EosParams = dc_field(default_factory=EosParams)


@dataclass
class BoundaryCondition:
    """Ghost-fill rules per (axis, side); dirichlet slabs are frozen at setup."""

    kinds: dict
    dirichlet: dict


@dataclass
class Field:
    """Padded conservative data with a synchronized primitive cache."""

    grid: Grid
    U: np.ndarray
    prim: PrimState

    def _interior(self):
        g = self.grid.ghost
        return (slice(g, -g),) * self.grid.d

    def interior_U(self) -> np.ndarray:
        return self.U[(slice(None),) + self._interior()]

    def set_interior_U(self, arr: np.ndarray) -> None:
        self.U[(slice(None),) + self._interior()] = arr

    def interior_prim(self) -> PrimState:
        sl = self._interior()
        return PrimState(self.prim.rho[sl], self.prim.vel[(slice(None),) + sl],
                         self.prim.p[sl])


def make_field(grid: Grid, ic: Callable, eos: EosParams) -> Field:
    """Allocate a padded field and fill the interior from the initial condition."""
    if grid.d == 1:
        w = ic(grid.centers(0))
    else:
        X, Y = np.meshgrid(grid.centers(0), grid.centers(1), indexing="ij")
        w = ic(X, Y)
    w.validate()
    pad = grid.padded_shape
    U = np.full((grid.d + 2,) + pad, np.nan)
    prim = PrimState(np.full(pad, np.nan), np.full((grid.d,) + pad, np.nan),
                     np.full(pad, np.nan))
    fld = Field(grid, U, prim)
    sl = fld._interior()
    cons = prim_to_cons(w, eos)
    U[(slice(None),) + sl] = cons.stack()
    prim.rho[sl] = w.rho
    prim.vel[(slice(None),) + sl] = w.vel
    prim.p[sl] = w.p
    return fld


def make_boundary(grid: Grid, kinds, ic: Optional[Callable] = None,
                  eos: Optional[EosParams] = None) -> BoundaryCondition:
    """Build a BoundaryCondition from per-side kind names.

    ``kinds`` is (left, right) in 1D and (left, right, bottom, top) in 2D.
    Dirichlet sides freeze the initial condition evaluated at ghost centers.
    """
    kinds = tuple(kinds)
    if len(kinds) != 2 * grid.d:
        raise ValueError(f"expected {2 * grid.d} boundary kinds, got {len(kinds)}")
    for k in kinds:
        if k not in BC_KINDS:
            raise ValueError(f"unknown boundary kind {k!r}")
    kind_map = {}
    for axis in range(grid.d):
        a, b = kinds[2 * axis], kinds[2 * axis + 1]
        if ("periodic" in (a, b)) and a != b:
            raise ValueError("periodic boundaries must be paired on opposing sides")
        kind_map[(axis, 0)], kind_map[(axis, 1)] = a, b

    dirichlet = {}
    for (axis, side), kind in kind_map.items():
        if kind != "dirichlet":
            continue
        if ic is None or eos is None:
            raise ValueError("dirichlet boundaries need the initial condition and EOS")
        g, n = grid.ghost, grid.size(axis)
        coords = grid.centers(axis, padded=True)
        ghost_c = coords[:g] if side == 0 else coords[n + g:]
        if grid.d == 1:
            w = ic(ghost_c)
        else:
            other = grid.centers(1 - axis, padded=True)
            if axis == 0:
                X, Y = np.meshgrid(ghost_c, other, indexing="ij")
            else:
                X, Y = np.meshgrid(other, ghost_c, indexing="ij")
            w = ic(X, Y)
        w.validate()
        dirichlet[(axis, side)] = {"prim": w, "cons": prim_to_cons(w, eos).stack()}
    return BoundaryCondition(kind_map, dirichlet)


def _side_slices(n: int, g: int, side: int, kind: str):
    if side == 0:
        ghost = slice(0, g)
        src = {"periodic": slice(n, n + g), "outflow": slice(g, g + 1),
               "reflective": slice(2 * g - 1, g - 1, -1)}[kind]
    else:
        ghost = slice(n + g, n + 2 * g)
        src = {"periodic": slice(g, 2 * g), "outflow": slice(n + g - 1, n + g),
               "reflective": slice(n + g - 1, n - 1, -1)}[kind]
    return ghost, src


def _axis_index(arr: np.ndarray, grid: Grid, axis: int) -> int:
    return arr.ndim - grid.d + axis


def apply_boundary(fld: Field, bc: BoundaryCondition) -> Field:
    """Fill ghost layers of both the conservative and primitive arrays in place."""
    grid = fld.grid
    arrays = [fld.U, fld.prim.rho, fld.prim.vel, fld.prim.p]
    for axis in range(grid.d):
        n, g = grid.size(axis), grid.ghost
        for side in (0, 1):
            kind = bc.kinds[(axis, side)]
            if kind == "dirichlet":
                slab = bc.dirichlet[(axis, side)]
                ghost, _ = _side_slices(n, g, side, "outflow")
                for arr, val in [(fld.U, slab["cons"]), (fld.prim.rho, slab["prim"].rho),
                                 (fld.prim.vel, slab["prim"].vel), (fld.prim.p, slab["prim"].p)]:
                    idx = [slice(None)] * arr.ndim
                    idx[_axis_index(arr, grid, axis)] = ghost
                    arr[tuple(idx)] = val
                continue
            ghost, src = _side_slices(n, g, side, kind)
            for arr in arrays:
                ax = _axis_index(arr, grid, axis)
                gi = [slice(None)] * arr.ndim
                si = [slice(None)] * arr.ndim
                gi[ax], si[ax] = ghost, src
                arr[tuple(gi)] = arr[tuple(si)]
            if kind == "reflective":
                # mirror flips the wall-normal velocity and momentum
                for arr, comp in [(fld.U, 1 + axis), (fld.prim.vel, axis)]:
                    gi = [slice(None)] * arr.ndim
                    gi[0] = comp
                    gi[_axis_index(arr, grid, axis)] = ghost
                    arr[tuple(gi)] *= -1.0
    return fld


def sync_primitives(fld: Field, eos: EosParams) -> None:
    """Recover interior primitives from the conserved data (warm-started Newton)."""
    sl = fld._interior()
    U = ConsState.from_stack(fld.U[(slice(None),) + sl])
    try:
        w = cons_to_prim(U, eos, p_guess=fld.prim.p[sl])
    except NonPhysicalState as exc:
        raise NonPhysicalState(f"primitive recovery failed at interior cell: {exc}") from None
    fld.prim.rho[sl] = w.rho
    fld.prim.vel[(slice(None),) + sl] = w.vel
    fld.prim.p[sl] = w.p


def _sweep_views(fld: Field, axis: int):
    """Component arrays sliced interior in the other direction, sweep axis last."""
    grid = fld.grid
    g = grid.ghost
    arrays = {"U": fld.U, "rho": fld.prim.rho, "vel": fld.prim.vel, "p": fld.prim.p}
    out = {}
    for name, arr in arrays.items():
        if grid.d == 1:
            out[name] = arr
            continue
        ax_x = _axis_index(arr, grid, 0)
        ax_y = _axis_index(arr, grid, 1)
        if axis == 0:
            idx = [slice(None)] * arr.ndim
            idx[ax_y] = slice(g, -g)
            out[name] = np.moveaxis(arr[tuple(idx)], ax_x, -1)
        else:
            idx = [slice(None)] * arr.ndim
            idx[ax_x] = slice(g, -g)
            out[name] = arr[tuple(idx)]
    return out


def _interface_fluxes(fld: Field, cfg: SchemeConfig, axis: int) -> np.ndarray:
    """Numerical fluxes at the n+1 interfaces along ``axis``.

    Returns shape (ncomp, *other_interior, n+1) with the sweep axis last.
    """
    grid = fld.grid
    g, n = grid.ghost, grid.size(axis)
    nf = n + 1
    views = _sweep_views(fld, axis)
    rho, vel, p, U = views["rho"], views["vel"], views["p"], views["U"]

    def cell_slice(j):
        # stencil member j in 0..5 maps to cells i-2+j for interface i+1/2
        s = g - 3 + j
        return slice(s, s + nf)

    def prim_at(j):
        sl = cell_slice(j)
        return PrimState(rho[..., sl], vel[..., sl], p[..., sl])

    if cfg.flux_mode is FluxMode.LLF1:
        wpad = PrimState(rho, vel, p)
        Upad = ConsState.from_stack(U)
        F = physical_flux(wpad, Upad, axis)
        sr = max_signal_speed(wpad, cfg.eos, axis)
        L, R = cell_slice(2), cell_slice(3)
        a = np.maximum(sr[..., L], sr[..., R])
        return 0.5 * (F[..., L] + F[..., R]) - 0.5 * a * (U[..., R] - U[..., L])

    stencil = [prim_at(j) for j in range(6)]
    flux = ec_flux_high_order(stencil, cfg.eos, axis)
    if cfg.flux_mode is FluxMode.EC:
        return flux

    pair = StatePair(stencil[2], stencil[3])
    avg = interface_average(pair)
    if grid.d == 1:
        sys = scaled_eigensystem_1d(avg, cfg.eos)
    else:
        sys = scaled_eigensystem_2d(avg, cfg.eos, axis)
    wpad = PrimState(rho, vel, p)
    Vpad = entropy_quantities(wpad, cfg.eos).V
    jumps = scaled_variable_jumps([Vpad[..., cell_slice(j)] for j in range(6)], sys)
    gate = jumps.switch * dissipation_speeds(pair, cfg.eos, axis, cfg.dissipation)
    diss = np.einsum("...ij,...j->...i", sys.R, gate * jumps.w_jump_reconstructed)
    return flux - 0.5 * np.moveaxis(diss, -1, 0)


def semidiscrete_rhs(fld: Field, cfg: SchemeConfig, bc: BoundaryCondition) -> np.ndarray:
    """dU/dt over the interior: minus the divided interface flux differences."""
    sync_primitives(fld, cfg.eos)
    apply_boundary(fld, bc)
    grid = fld.grid
    out = np.zeros((grid.d + 2,) + grid.interior_shape)
    for axis in range(grid.d):
        fhat = _interface_fluxes(fld, cfg, axis)
        dflux = (fhat[..., 1:] - fhat[..., :-1]) / grid.spacing(axis)
        if grid.d == 2 and axis == 0:
            dflux = np.moveaxis(dflux, -1, 1)
        out -= dflux
    return out


def entropy_production(fld: Field, cfg: SchemeConfig, bc: BoundaryCondition) -> float:
    """Semi-discrete rate of total-entropy change, sum of V . dU/dt times volume."""
    L = semidiscrete_rhs(fld, cfg, bc)
    V = entropy_quantities(fld.interior_prim(), cfg.eos).V
    return float(np.sum(V * L) * fld.grid.cell_volume)
