"""Benchmark catalogue, error norms, convergence studies, and fine-mesh references."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .eigen import DissipationKind
from .scheme import FluxMode, Grid, SchemeConfig
from .state import EosParams, PrimState
from .timeint import TimeControls, run


@dataclass
class ProblemSpec:
    """One benchmark: domain, adiabatic index, initial data, boundaries, output time."""

    name: str
    d: int
    xlim: tuple
    gamma: float
    ic: Callable
    bc_kinds: tuple
    t_end: float
    ylim: Optional[tuple] = None
    exact: Optional[Callable] = None
    default_nx: int = 400
    default_ny: Optional[int] = None
    description: str = ""


@dataclass
class ConvergenceRow:
    n: int
    err_l1: float
    err_l2: float
    err_linf: float
    order_l1: Optional[float] = None
    order_l2: Optional[float] = None
    order_linf: Optional[float] = None


def _const(x, value):
    return np.full(np.shape(x), float(value))


def _riemann1d_ic(left, right, xsplit=0.5):
    (rl, ul, pl), (rr, ur, pr) = left, right

    def ic(x):
        cond = x < xsplit
        rho = np.where(cond, rl, rr)
        u = np.where(cond, ul, ur)
        p = np.where(cond, pl, pr)
        return PrimState(rho, u[None], p)

    return ic


def _quadrant_ic(ne, nw, sw, se, split=(0.5, 0.5)):
    """2D four-quadrant data, tuples (rho, u, v, p) ordered NE, NW, SW, SE."""

    def ic(x, y):
        right = x > split[0]
        top = y > split[1]
        conds = [right & top, ~right & top, ~right & ~top, right & ~top]
        states = [ne, nw, sw, se]
        rho = np.select(conds, [np.full(np.shape(x), s[0]) for s in states])
        u = np.select(conds, [np.full(np.shape(x), s[1]) for s in states])
        v = np.select(conds, [np.full(np.shape(x), s[2]) for s in states])
        p = np.select(conds, [np.full(np.shape(x), s[3]) for s in states])
        return PrimState(rho, np.stack([u, v]), p)

    return ic


def _vortex_prim(x, y, gamma, eps, w_speed, direction):
    """Isentropic vortex boosted to move with speed w_speed along -direction.

    The rest-frame profile is rho = (1 - C1 e^(1-r^2))^(1/(gamma-1)), p = rho^gamma
    with a divergence-free azimuthal velocity; lab-frame coordinates are
    Lorentz-contracted along the boost axis and velocities composed
    relativistically.
    """
    nx_, ny_ = direction
    lor = 1.0 / np.sqrt(1.0 - w_speed ** 2)
    s = x * nx_ + y * ny_
    x0 = x + (lor - 1.0) * s * nx_
    y0 = y + (lor - 1.0) * s * ny_
    r2 = x0 * x0 + y0 * y0
    c1 = (gamma - 1.0) / gamma / (8.0 * np.pi ** 2) * eps ** 2
    expf = np.exp(1.0 - r2)
    rho = (1.0 - c1 * expf) ** (1.0 / (gamma - 1.0))
    p = rho ** gamma
    c2 = 2.0 * gamma * c1 * expf / (2.0 * gamma - 1.0 - gamma * c1 * expf)
    f = np.sqrt(c2 / (1.0 + c2 * r2))
    u0 = -y0 * f
    v0 = x0 * f
    bx, by = -w_speed * nx_, -w_speed * ny_
    bdotu = u0 * bx + v0 * by
    denom = 1.0 + bdotu
    gfac = lor / (lor + 1.0) * bdotu
    u = (u0 / lor + bx + gfac * bx) / denom
    v = (v0 / lor + by + gfac * by) / denom
    return PrimState(rho, np.stack([u, v]), p)


def _wrap(x, lo, hi):
    return lo + np.mod(x - lo, hi - lo)


_SQ2 = np.sqrt(2.0)

# Shock-vortex states: uniform pre-shock flow and the matching post-shock state
# of the stationary Mach-1.5 shock at x = -6.
_SV_POST = (4.891497310766981, -0.388882958251919, 0.0, 11.894863258311670)
_SV_SHOCK_X = -6.0

# Shock-bubble planar shock states (left of / right of x = 265).
_SB_LEFT = (1.0, 0.0, 0.0, 0.05)
_SB_RIGHT = (1.865225080631180, -0.196781107378299, 0.0, 0.15)
_SB_BUBBLE_CENTER = (45.0, 45.0)
_SB_BUBBLE_RADIUS = 25.0


def _acc1d_state(x):
    return PrimState(1.0 + 0.2 * np.sin(x), _const(x, 0.2)[None], _const(x, 1.0))


def _acc2d_ic(x, y):
    return _vortex_prim(x, y, gamma=5.0 / 3.0, eps=5.0, w_speed=0.5 * _SQ2,
                        direction=(1.0 / _SQ2, 1.0 / _SQ2))


def _acc2d_exact(x, y, t):
    # vortex velocity is (-0.5, -0.5); the profile translates periodically
    return _acc2d_ic(_wrap(x + 0.5 * t, -5.0, 5.0), _wrap(y + 0.5 * t, -5.0, 5.0))


def _sv_ic(x, y):
    vort = _vortex_prim(x, y, gamma=1.4, eps=5.0, w_speed=0.9, direction=(1.0, 0.0))
    post = x < _SV_SHOCK_X
    rho = np.where(post, _SV_POST[0], vort.rho)
    u = np.where(post, _SV_POST[1], vort.vel[0])
    v = np.where(post, _SV_POST[2], vort.vel[1])
    p = np.where(post, _SV_POST[3], vort.p)
    return PrimState(rho, np.stack([u, v]), p)


def _sb_ic_factory(bubble_rho):
    def ic(x, y):
        right = x >= 265.0
        rho = np.where(right, _SB_RIGHT[0], _SB_LEFT[0])
        u = np.where(right, _SB_RIGHT[1], _SB_LEFT[1])
        v = np.where(right, _SB_RIGHT[2], _SB_LEFT[2])
        p = np.where(right, _SB_RIGHT[3], _SB_LEFT[3])
        cx, cy = _SB_BUBBLE_CENTER
        inside = (x - cx) ** 2 + (y - cy) ** 2 <= _SB_BUBBLE_RADIUS ** 2
        rho = np.where(inside, bubble_rho, rho)
        u = np.where(inside, 0.0, u)
        v = np.where(inside, 0.0, v)
        p = np.where(inside, 0.05, p)
        return PrimState(rho, np.stack([u, v]), p)

    return ic


def catalogue(sb_bubble_rho: float = 0.1358) -> list:
    """All benchmark problems; the shock-bubble bubble density is a parameter."""
    specs = [
        ProblemSpec(
            name="acc1d", d=1, xlim=(0.0, 2.0 * np.pi), gamma=5.0 / 3.0,
            ic=_acc1d_state, bc_kinds=("periodic", "periodic"), t_end=0.1,
            exact=lambda x, t: PrimState(1.0 + 0.2 * np.sin(x - 0.2 * t),
                                         _const(x, 0.2)[None], _const(x, 1.0)),
            default_nx=320, description="smooth translating sine wave accuracy test"),
        ProblemSpec(
            name="rp1", d=1, xlim=(0.0, 1.0), gamma=5.0 / 3.0,
            ic=_riemann1d_ic((10.0, 0.0, 40.0 / 3.0), (1.0, 0.0, 1e-6)),
            bc_kinds=("outflow", "outflow"), t_end=0.4, default_nx=400,
            description="rarefaction + contact + right-moving shock"),
        ProblemSpec(
            name="rp2", d=1, xlim=(0.0, 1.0), gamma=5.0 / 3.0,
            ic=_riemann1d_ic((1.0, 0.0, 1e3), (1.0, 0.0, 1e-2)),
            bc_kinds=("outflow", "outflow"), t_end=0.4, default_nx=400,
            description="strong blast with a heavily curved rarefaction fan"),
        ProblemSpec(
            name="rp3", d=1, xlim=(0.0, 1.0), gamma=4.0 / 3.0,
            ic=_riemann1d_ic((1.0, 0.9, 1.0), (1.0, 0.0, 10.0)),
            bc_kinds=("outflow", "outflow"), t_end=0.4, default_nx=400,
            description="slow left-moving shock, contact, fast right shock"),
        ProblemSpec(
            name="rp4", d=1, xlim=(0.0, 1.0), gamma=5.0 / 3.0,
            ic=_riemann1d_ic((1.0, -0.7, 20.0), (1.0, 0.7, 20.0)),
            bc_kinds=("outflow", "outflow"), t_end=0.4, default_nx=400,
            description="two rarefaction waves with a trivial contact"),
        ProblemSpec(
            name="dp", d=1, xlim=(0.0, 1.0), gamma=5.0 / 3.0,
            ic=lambda x: PrimState(
                np.where(x < 0.5, 5.0, 2.0 + 0.3 * np.sin(50.0 * x)),
                _const(x, 0.0)[None], np.where(x < 0.5, 50.0, 5.0)),
            bc_kinds=("outflow", "outflow"), t_end=0.35, default_nx=400,
            description="shock running into a sinusoidal density field"),
        ProblemSpec(
            name="blast", d=1, xlim=(0.0, 1.0), gamma=1.4,
            ic=lambda x: PrimState(
                _const(x, 1.0),
                _const(x, 0.0)[None],
                np.select([x < 0.1, x > 0.9], [1e3, 1e2], default=1e-2)),
            bc_kinds=("outflow", "outflow"), t_end=0.43, default_nx=4000,
            description="colliding blast waves"),
        ProblemSpec(
            name="acc2d", d=2, xlim=(-5.0, 5.0), ylim=(-5.0, 5.0), gamma=5.0 / 3.0,
            ic=_acc2d_ic, bc_kinds=("periodic",) * 4, t_end=20.0,
            exact=_acc2d_exact, default_nx=320, default_ny=320,
            description="relativistic isentropic vortex accuracy test"),
        ProblemSpec(
            name="2drp1", d=2, xlim=(0.0, 1.0), ylim=(0.0, 1.0), gamma=5.0 / 3.0,
            ic=_quadrant_ic((0.5, 0.5, -0.5, 5.0), (1.0, 0.5, 0.5, 5.0),
                            (3.0, -0.5, 0.5, 5.0), (1.5, -0.5, -0.5, 5.0)),
            bc_kinds=("outflow",) * 4, t_end=0.4, default_nx=400, default_ny=400,
            description="four interacting vortex sheets"),
        ProblemSpec(
            name="2drp2", d=2, xlim=(0.0, 1.0), ylim=(0.0, 1.0), gamma=5.0 / 3.0,
            ic=_quadrant_ic((1.0, 0.0, 0.0, 1.0), (0.5771, -0.3529, 0.0, 0.4),
                            (1.0, -0.3529, -0.3529, 1.0), (0.5771, 0.0, -0.3529, 0.4)),
            bc_kinds=("outflow",) * 4, t_end=0.4, default_nx=400, default_ny=400,
            description="four interacting rarefaction waves"),
        ProblemSpec(
            name="2drp3", d=2, xlim=(0.0, 1.0), ylim=(0.0, 1.0), gamma=5.0 / 3.0,
            ic=_quadrant_ic((0.035145216124503, 0.0, 0.0, 0.162931056509027),
                            (0.1, 0.7, 0.0, 1.0), (0.5, 0.0, 0.0, 1.0),
                            (0.1, 0.0, 0.7, 1.0)),
            bc_kinds=("outflow",) * 4, t_end=0.4, default_nx=400, default_ny=400,
            description="two contacts and two shocks forming a mushroom cloud"),
        ProblemSpec(
            name="sb", d=2, xlim=(0.0, 325.0), ylim=(-45.0, 45.0), gamma=5.0 / 3.0,
            ic=_sb_ic_factory(sb_bubble_rho),
            bc_kinds=("outflow", "dirichlet", "reflective", "reflective"),
            t_end=450.0, default_nx=650, default_ny=180,
            description="left-moving planar shock hitting a light bubble"),
        ProblemSpec(
            name="sv", d=2, xlim=(-17.0, 3.0), ylim=(-5.0, 5.0), gamma=1.4,
            ic=_sv_ic,
            bc_kinds=("outflow", "dirichlet", "reflective", "reflective"),
            t_end=19.0, default_nx=800, default_ny=400,
            description="fast vortex passing through a stationary shock"),
    ]
    return specs


def get_problem(name: str, sb_bubble_rho: float = 0.1358) -> ProblemSpec:
    for spec in catalogue(sb_bubble_rho):
        if spec.name == name:
            return spec
    raise KeyError(f"unknown problem {name!r}")


def problem_grid(spec: ProblemSpec, nx: Optional[int] = None,
                 ny: Optional[int] = None) -> Grid:
    nx = nx or spec.default_nx
    if spec.d == 1:
        return Grid.make_1d(spec.xlim[0], spec.xlim[1], nx)
    ny = ny or spec.default_ny or nx
    return Grid.make_2d(spec.xlim, spec.ylim, nx, ny)


def scheme_config(spec: ProblemSpec, flux_mode: FluxMode = FluxMode.ES,
                  dissipation: DissipationKind = DissipationKind.LAX_FRIEDRICHS,
                  ) -> SchemeConfig:
    return SchemeConfig(flux_mode=flux_mode, dissipation=dissipation,
                        eos=EosParams(spec.gamma))


def error_norms(numeric: np.ndarray, exact: np.ndarray):
    """Discrete (l1, l2, linf) error norms, averaged over the point count."""
    if np.shape(numeric) != np.shape(exact):
        raise ValueError("field shapes do not match")
    e = np.abs(np.asarray(numeric) - np.asarray(exact))
    n = e.size
    return float(np.sum(e) / n), float(np.sqrt(np.sum(e * e) / n)), float(np.max(e))


def exact_density(spec: ProblemSpec, grid: Grid, t: float) -> np.ndarray:
    if spec.exact is None:
        raise ValueError(f"problem {spec.name} has no exact solution")
    if spec.d == 1:
        return spec.exact(grid.centers(0), t).rho
    X, Y = np.meshgrid(grid.centers(0), grid.centers(1), indexing="ij")
    return spec.exact(X, Y, t).rho


def convergence_study(spec: ProblemSpec, resolutions: Sequence[int],
                      cfg_flux: FluxMode = FluxMode.ES,
                      cfl: float = 0.4, accuracy_mode: bool = True) -> list:
    """Errors and orders in rho against the exact solution over a resolution sweep."""
    rows = []
    prev = None
    for n in resolutions:
        grid = problem_grid(spec, n, n if spec.d == 2 else None)
        cfg = scheme_config(spec, cfg_flux)
        controls = TimeControls(t_end=spec.t_end, cfl=cfl, accuracy_mode=accuracy_mode)
        result = run(spec, grid, cfg, controls)
        num = result.field.interior_prim().rho
        l1, l2, linf = error_norms(num, exact_density(spec, grid, spec.t_end))
        row = ConvergenceRow(n=n, err_l1=l1, err_l2=l2, err_linf=linf)
        if prev is not None:
            ratio = np.log2(n / prev.n)
            row.order_l1 = float(np.log2(prev.err_l1 / l1) / ratio)
            row.order_l2 = float(np.log2(prev.err_l2 / l2) / ratio)
            row.order_linf = float(np.log2(prev.err_linf / linf) / ratio)
        rows.append(row)
        prev = row
    return rows


def reference_solution(spec: ProblemSpec, fine_n: int, nx: Optional[int] = None,
                       cfl: float = 0.4):
    """First-order local Lax-Friedrichs run at ``fine_n`` cells, point-sampled
    onto the coarse grid.  1D problems only."""
    if spec.d != 1:
        raise ValueError("fine-mesh references are built for 1D problems")
    nx = nx or spec.default_nx
    if fine_n % nx != 0:
        raise ValueError("fine_n must be a multiple of the target resolution")
    fine_grid = problem_grid(spec, fine_n)
    cfg = scheme_config(spec, FluxMode.LLF1)
    result = run(spec, fine_grid, cfg, TimeControls(t_end=spec.t_end, cfl=cfl))
    wf = result.field.interior_prim()
    coarse = problem_grid(spec, nx)
    idx = np.clip(((coarse.centers(0) - spec.xlim[0]) / fine_grid.dx).astype(int),
                  0, fine_n - 1)
    return PrimState(wf.rho[idx], wf.vel[:, idx], wf.p[idx]), coarse


def schlieren(rho: np.ndarray, grid: Grid) -> np.ndarray:
    """log10(1 + |grad rho|) with central differences (one-sided at edges)."""
    gx = np.gradient(rho, grid.dx, axis=0)
    gy = np.gradient(rho, grid.dy, axis=1)
    return np.log10(1.0 + np.hypot(gx, gy))
