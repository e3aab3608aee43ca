"""Two-point entropy conservative fluxes in 1D/2D and the 6th-order combination.

The two-point fluxes satisfy the discrete entropy-conservation condition
[[V]].F = [[psi]] across the interface; the 6th-order flux is the linear
combination of shifted two-point fluxes with weights (3/2, -3/10, 1/30).
"""

from __future__ import annotations

from enum import Enum
from typing import Sequence

import numpy as np

from .means import StatePair, ln_mean, lorentz_mean_1d, lorentz_mean_2d, mean
from .state import EosParams, PrimState

SIXTH_ORDER_WEIGHTS = (1.5, -0.3, 1.0 / 30.0)


class EcFluxKind(Enum):
    SECOND = "second"
    SIXTH = "sixth"


def ec_denominator_1d(pair: StatePair) -> np.ndarray:
    """The positive denominator of the 1D flux; equals <rho/p> W_L W_R."""
    wl, wr = pair.left, pair.right
    uL, uR = wl.vel[0], wr.vel[0]
    WL, WR = wl.lorentz(), wr.lorentz()
    z2m = mean(wl.rho / wl.p, wr.rho / wr.p)
    Wm = mean(WL, WR)
    uWm = mean(uL * WL, uR * WR)
    L3 = lorentz_mean_1d(uL, uR)
    return z2m * (Wm * Wm + mean(uL, uR) * Wm * L3 - uWm * L3)


def ec_flux_1d(pair: StatePair, eos: EosParams) -> np.ndarray:
    """Entropy conservative two-point flux for the 1D equations."""
    wl, wr = pair.left, pair.right
    uL, uR = wl.vel[0], wr.vel[0]
    WL, WR = wl.lorentz(), wr.lorentz()

    z1m = mean(wl.rho, wr.rho)
    z1ln = ln_mean(wl.rho, wr.rho)
    z2L, z2R = wl.rho / wl.p, wr.rho / wr.p
    z2m = mean(z2L, z2R)
    z2ln = ln_mean(z2L, z2R)
    z3m = mean(uL, uR)
    Wm = mean(WL, WR)
    uWm = mean(uL * WL, uR * WR)
    L3 = lorentz_mean_1d(uL, uR)
    alpha = 1.0 + 1.0 / ((eos.gamma - 1.0) * z2ln)

    F1 = z1ln * uWm
    Q = ec_denominator_1d(pair)
    F2 = (alpha * z2m * L3 * F1 + z1m * Wm * Wm + z1m * z3m * Wm * L3) / Q
    F3 = (z1m * Wm * uWm + z1m * z3m * uWm * L3
          + alpha * F1 * (z2m * Wm + z2m * z3m * L3)) / Q
    return np.stack([np.broadcast_to(F1, np.shape(F2)), F2, F3])


def _swap_uv(w: PrimState) -> PrimState:
    return PrimState(w.rho, w.vel[::-1], w.p)


def ec_denominator_2d(pair: StatePair) -> np.ndarray:
    """The positive denominator of the 2D fluxes; equals <rho/p> W_L W_R."""
    wl, wr = pair.left, pair.right
    uL, vL = wl.vel[0], wl.vel[1]
    uR, vR = wr.vel[0], wr.vel[1]
    WL, WR = wl.lorentz(), wr.lorentz()
    z2m = mean(wl.rho / wl.p, wr.rho / wr.p)
    Wm = mean(WL, WR)
    uWm = mean(uL * WL, uR * WR)
    vWm = mean(vL * WL, vR * WR)
    Lx, Ly = lorentz_mean_2d(pair)
    return z2m * (Wm * Wm + mean(uL, uR) * Wm * Lx - uWm * Lx
                  + mean(vL, vR) * Wm * Ly - vWm * Ly)


def _ec_flux_2d_x(pair: StatePair, eos: EosParams) -> np.ndarray:
    wl, wr = pair.left, pair.right
    uL, vL = wl.vel[0], wl.vel[1]
    uR, vR = wr.vel[0], wr.vel[1]
    WL, WR = wl.lorentz(), wr.lorentz()

    z1m = mean(wl.rho, wr.rho)
    z1ln = ln_mean(wl.rho, wr.rho)
    z2L, z2R = wl.rho / wl.p, wr.rho / wr.p
    z2m = mean(z2L, z2R)
    z2ln = ln_mean(z2L, z2R)
    z3m = mean(uL, uR)
    z4m = mean(vL, vR)
    Wm = mean(WL, WR)
    uWm = mean(uL * WL, uR * WR)
    vWm = mean(vL * WL, vR * WR)
    Lx, Ly = lorentz_mean_2d(pair)
    alpha = 1.0 + 1.0 / ((eos.gamma - 1.0) * z2ln)

    F1 = z1ln * uWm
    Q = ec_denominator_2d(pair)
    F2 = (alpha * z2m * Lx * F1 + z1m * (Wm * Wm - vWm * Ly)
          + z1m * Wm * (z3m * Lx + z4m * Ly)) / Q
    F3 = (alpha * z2m * Ly * F1 + z1m * uWm * Ly) / Q
    F4 = (alpha * F1 + uWm * F2 + vWm * F3) / Wm
    return np.stack([np.broadcast_to(F1, np.shape(F2)), F2, F3, F4])


def ec_flux_2d(pair: StatePair, eos: EosParams, axis: int = 0) -> np.ndarray:
    """Entropy conservative two-point flux along ``axis`` for the 2D equations.

    The y-direction flux is the x-direction flux of the velocity-swapped pair
    with the momentum components exchanged (mirror symmetry of the system).
    """
    if axis == 0:
        return _ec_flux_2d_x(pair, eos)
    swapped = StatePair(_swap_uv(pair.left), _swap_uv(pair.right))
    G = _ec_flux_2d_x(swapped, eos)
    return G[[0, 2, 1, 3]]


def two_point_ec_flux(pair: StatePair, eos: EosParams, axis: int = 0) -> np.ndarray:
    if pair.d == 1:
        return ec_flux_1d(pair, eos)
    return ec_flux_2d(pair, eos, axis)


# Stencil index pairs (cells i-2..i+3 mapped to 0..5) entering the 6th-order
# combination, grouped by weight.
_SIXTH_ORDER_PAIRS = (((2, 3),), ((1, 3), (2, 4)), ((0, 3), (1, 4), (2, 5)))


def ec_flux_high_order(stencil: Sequence[PrimState], eos: EosParams,
                       axis: int = 0) -> np.ndarray:
    """6th-order entropy conservative flux from 6 consecutive states."""
    if len(stencil) != 6:
        raise ValueError("the 6th-order flux needs 6 consecutive states")
    total = None
    for weight, pairs in zip(SIXTH_ORDER_WEIGHTS, _SIXTH_ORDER_PAIRS):
        for a, b in pairs:
            term = weight * two_point_ec_flux(StatePair(stencil[a], stencil[b]), eos, axis)
            total = term if total is None else total + term
    return total
