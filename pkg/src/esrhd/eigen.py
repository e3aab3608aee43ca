"""Scaled right-eigenvector systems and Roe / Lax-Friedrichs dissipation.

The scaled matrix R satisfies R R^T = dU/dV and dF/dU = R diag(lambda) R^-1
at the state it is built from, which makes R |Lambda| R^T a symmetric positive
semi-definite dissipation operator in entropy-variable space.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .means import StatePair, ln_mean, mean
from .state import EosParams, PrimState, sound_speed, specific_enthalpy


class DissipationKind(Enum):
    ROE = "roe"
    LAX_FRIEDRICHS = "lax_friedrichs"


@dataclass
class ScaledEigenSystem:
    """Scaled right eigenvectors (..., n, n) and matching eigenvalues (..., n)."""

    R: np.ndarray
    lambdas: np.ndarray
    axis: int


def interface_average(pair: StatePair) -> PrimState:
    """Averaged state feeding the interface eigensystem.

    Density uses the logarithmic mean, velocity the arithmetic mean, and the
    pressure is ln-mean(rho) / ln-mean(rho/p).
    """
    wl, wr = pair.left, pair.right
    rho = ln_mean(wl.rho, wr.rho)
    vel = np.stack([mean(wl.vel[i], wr.vel[i]) for i in range(pair.d)])
    p = rho / ln_mean(wl.rho / wl.p, wr.rho / wr.p)
    return PrimState(rho, vel, p)


def scaled_eigensystem_1d(avg: PrimState, eos: EosParams) -> ScaledEigenSystem:
    u = avg.vel[0]
    W = avg.lorentz()
    h = specific_enthalpy(avg.rho, avg.p, eos)
    cs = sound_speed(avg, eos)
    gamma = eos.gamma

    shape = np.shape(u)
    M = np.empty(shape + (3, 3), dtype=np.float64)
    M[..., 0, 0] = 1.0
    M[..., 0, 1] = 1.0
    M[..., 0, 2] = 1.0
    M[..., 1, 0] = (u - cs) * W * h
    M[..., 1, 1] = u * W
    M[..., 1, 2] = (u + cs) * W * h
    M[..., 2, 0] = (1.0 - u * cs) * W * h
    M[..., 2, 1] = W
    M[..., 2, 2] = (1.0 + u * cs) * W * h

    scale = np.empty(shape + (3,), dtype=np.float64)
    scale[..., 0] = avg.rho * W * (1.0 - u * cs) / (2.0 * gamma)
    scale[..., 1] = (gamma - 1.0) * avg.rho * W / gamma
    scale[..., 2] = avg.rho * W * (1.0 + u * cs) / (2.0 * gamma)

    lams = np.empty(shape + (3,), dtype=np.float64)
    lams[..., 0] = (u - cs) / (1.0 - u * cs)
    lams[..., 1] = u
    lams[..., 2] = (u + cs) / (1.0 + u * cs)

    return ScaledEigenSystem(M * np.sqrt(scale)[..., None, :], lams, axis=0)


def _scaled_eigensystem_2d_x(avg: PrimState, eos: EosParams) -> ScaledEigenSystem:
    u, v = avg.vel[0], avg.vel[1]
    W = avg.lorentz()
    h = specific_enthalpy(avg.rho, avg.p, eos)
    cs = sound_speed(avg, eos)
    cs2 = cs * cs
    gamma = eos.gamma

    root = cs / W * np.sqrt(1.0 - u * u - v * v * cs2)
    denom = 1.0 - (u * u + v * v) * cs2
    lam_m = (u * (1.0 - cs2) - root) / denom
    lam_p = (u * (1.0 - cs2) + root) / denom
    A_m = (1.0 - u * u) / (1.0 - u * lam_m)
    A_p = (1.0 - u * u) / (1.0 - u * lam_p)
    B = avg.rho * W * (1.0 - u * u - v * v * cs2) / (gamma * (1.0 - u * u))
    C = avg.rho * u * cs * np.sqrt(1.0 - u * u - v * v * cs2) / (gamma * (1.0 - u * u))

    shape = np.shape(u)
    M = np.empty(shape + (4, 4), dtype=np.float64)
    M[..., 0, 0] = 1.0
    M[..., 0, 1] = 1.0 / W
    M[..., 0, 2] = W * v
    M[..., 0, 3] = 1.0
    M[..., 1, 0] = h * W * A_m * lam_m
    M[..., 1, 1] = u
    M[..., 1, 2] = 2.0 * h * W * W * u * v
    M[..., 1, 3] = h * W * A_p * lam_p
    M[..., 2, 0] = h * W * v
    M[..., 2, 1] = v
    M[..., 2, 2] = h * (1.0 + 2.0 * W * W * v * v)
    M[..., 2, 3] = h * W * v
    M[..., 3, 0] = h * W * A_m
    M[..., 3, 1] = 1.0
    M[..., 3, 2] = 2.0 * h * W * W * v
    M[..., 3, 3] = h * W * A_p

    scale = np.empty(shape + (4,), dtype=np.float64)
    scale[..., 0] = 0.5 * (B - C)
    scale[..., 1] = (gamma - 1.0) * avg.rho * W ** 3 / gamma
    scale[..., 2] = avg.p / (W * (1.0 - u * u) * h)
    scale[..., 3] = 0.5 * (B + C)

    lams = np.stack([lam_m, np.broadcast_to(u, np.shape(lam_m)),
                     np.broadcast_to(u, np.shape(lam_m)), lam_p], axis=-1)
    return ScaledEigenSystem(M * np.sqrt(scale)[..., None, :], lams, axis=0)


def scaled_eigensystem_2d(avg: PrimState, eos: EosParams, axis: int = 0) -> ScaledEigenSystem:
    """Scaled eigensystem along ``axis``; the y system mirrors the x system."""
    if axis == 0:
        return _scaled_eigensystem_2d_x(avg, eos)
    swapped = PrimState(avg.rho, avg.vel[::-1], avg.p)
    sys_x = _scaled_eigensystem_2d_x(swapped, eos)
    perm = [0, 2, 1, 3]
    R = sys_x.R[..., perm, :][..., :, perm]
    return ScaledEigenSystem(R, sys_x.lambdas, axis=1)


def dissipation_matrix(sys: ScaledEigenSystem, kind: DissipationKind) -> np.ndarray:
    """Diagonal |Lambda| of the dissipation operator, shape (..., n)."""
    abslam = np.abs(sys.lambdas)
    if kind is DissipationKind.ROE:
        return abslam
    return np.broadcast_to(np.max(abslam, axis=-1, keepdims=True), abslam.shape)


def dissipation_speeds(pair: StatePair, eos: EosParams, axis: int,
                       kind: DissipationKind) -> np.ndarray:
    """Diagonal |Lambda| for the interface dissipation, shape (..., n).

    Speeds come from the two adjacent cell states (per-mode maximum for the
    Roe type, global maximum for Lax-Friedrichs): the interface-averaged state
    can be far colder than either cell across near-vacuum jumps, and its
    eigenvalues then under-dissipate catastrophically.
    """
    from .state import char_speeds

    lam = np.maximum(np.abs(char_speeds(pair.left, eos, axis)),
                     np.abs(char_speeds(pair.right, eos, axis)))
    lam = np.moveaxis(lam, 0, -1)
    if kind is DissipationKind.ROE:
        return lam
    return np.broadcast_to(np.max(lam, axis=-1, keepdims=True), lam.shape)
