"""Physical state vectors, ideal-gas EOS closure, and per-state entropy quantities.

Everything here is vectorized: the scalar fields of a state may be numpy
arrays of any common shape, and velocity carries a leading component axis of
length d (1 or 2).  Units put the speed of light at 1, so all velocities and
signal speeds live in (-1, 1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class NonPhysicalState(ValueError):
    """Conserved data admits no positive-pressure subluminal state."""


def _asfield(x) -> np.ndarray:
    return np.asarray(x, dtype=np.float64)


@dataclass(frozen=True)
class EosParams:
    """Ideal-gas EOS parameters; gamma is the adiabatic index in (1, 2]."""

    gamma: float = 5.0 / 3.0

    def __post_init__(self):
        if not 1.0 < self.gamma <= 2.0:
            raise ValueError(f"adiabatic index must lie in (1, 2], got {self.gamma}")


@dataclass
class PrimState:
    """Primitive variables: rest-mass density, velocity components, pressure.

    ``vel`` has shape ``(d,) + rho.shape`` with d in {1, 2}.
    """

    rho: np.ndarray
    vel: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        self.rho = _asfield(self.rho)
        self.vel = _asfield(self.vel)
        self.p = _asfield(self.p)
        if self.vel.ndim == 0:
            self.vel = self.vel[None]

    @property
    def d(self) -> int:
        return self.vel.shape[0]

    def speed2(self) -> np.ndarray:
        return np.sum(self.vel * self.vel, axis=0)

    def lorentz(self) -> np.ndarray:
        return 1.0 / np.sqrt(1.0 - self.speed2())

    def validate(self) -> None:
        if not np.all(np.isfinite(self.rho)) or np.any(self.rho <= 0.0):
            raise NonPhysicalState("non-positive rest-mass density")
        if not np.all(np.isfinite(self.p)) or np.any(self.p <= 0.0):
            raise NonPhysicalState("non-positive pressure")
        if np.any(self.speed2() >= 1.0):
            raise NonPhysicalState("superluminal velocity")


@dataclass
class ConsState:
    """Conserved variables: mass density D, momentum density, energy density."""

    D: np.ndarray
    mom: np.ndarray
    E: np.ndarray

    def __post_init__(self):
        self.D = _asfield(self.D)
        self.mom = _asfield(self.mom)
        self.E = _asfield(self.E)
        if self.mom.ndim == 0:
            self.mom = self.mom[None]

    @property
    def d(self) -> int:
        return self.mom.shape[0]

    def stack(self) -> np.ndarray:
        """Pack into a (d+2, ...) component-first array."""
        return np.concatenate([self.D[None], self.mom, self.E[None]], axis=0)

    @classmethod
    def from_stack(cls, arr: np.ndarray) -> "ConsState":
        return cls(arr[0], arr[1:-1], arr[-1])


@dataclass
class EntropyQuantities:
    """Entropy density, entropy fluxes, entropy variables, and flux potentials."""

    eta: np.ndarray   # entropy density
    q: np.ndarray     # entropy flux per direction, shape (d, ...)
    V: np.ndarray     # entropy variables, shape (d+2, ...)
    psi: np.ndarray   # flux potentials per direction, shape (d, ...)


def specific_enthalpy(rho, p, eos: EosParams):
    return 1.0 + eos.gamma * p / ((eos.gamma - 1.0) * rho)


def prim_to_cons(w: PrimState, eos: EosParams) -> ConsState:
    """Map (rho, u, p) to (D, m, E) through the Lorentz factor and enthalpy."""
    W = w.lorentz()
    h = specific_enthalpy(w.rho, w.p, eos)
    D = w.rho * W
    rhohW2 = w.rho * h * W * W
    mom = rhohW2 * w.vel
    E = rhohW2 - w.p
    return ConsState(D, mom, E)


def _pressure_residual(p, D, m2, E, gamma):
    Ep = E + p
    v2 = m2 / (Ep * Ep)
    W2 = 1.0 / (1.0 - v2)
    W = np.sqrt(W2)
    gfac = gamma / (gamma - 1.0)
    f = D * W + gfac * p * W2 - E - p
    # dW/dp = -W^3 v^2 / (E+p)
    dW = -W * W2 * v2 / Ep
    df = D * dW + gfac * (W2 + 2.0 * p * W * dW) - 1.0
    return f, df


def cons_to_prim(U: ConsState, eos: EosParams, p_guess=None) -> PrimState:
    """Recover primitives from conserved data by solving for the pressure.

    Newton iteration on the energy relation with |u| = |m|/(E+p), warm-started
    from ``p_guess`` when available, with a bisection fallback on [1e-16, 10E].
    Raises NonPhysicalState when no admissible root exists.
    """
    D, mom, E = U.D, U.mom, U.E
    m2 = np.sum(mom * mom, axis=0)
    mabs = np.sqrt(m2)
    bad = ~np.isfinite(D) | ~np.isfinite(E) | (D <= 0.0) | (E <= mabs)
    if np.any(bad):
        idx = tuple(int(v) for v in np.argwhere(np.atleast_1d(bad))[0])
        raise NonPhysicalState(
            f"conserved state at index {idx} violates D>0, E>|m| "
            f"(D={np.atleast_1d(D)[idx]:.6g}, E={np.atleast_1d(E)[idx]:.6g}, "
            f"|m|={np.atleast_1d(mabs)[idx]:.6g})"
        )

    gamma = eos.gamma
    if p_guess is not None:
        p = np.maximum(np.broadcast_to(_asfield(p_guess), D.shape).copy(), 1e-14)
    else:
        p = np.maximum((gamma - 1.0) * (E - D), 1e-14)
    p = np.atleast_1d(p)
    Df, m2f, Ef = np.atleast_1d(D), np.atleast_1d(m2), np.atleast_1d(E)

    active = np.ones(p.shape, dtype=bool)
    for _ in range(50):
        f, df = _pressure_residual(p[active], Df[active], m2f[active], Ef[active], gamma)
        with np.errstate(divide="ignore", invalid="ignore"):
            dp = f / df
        ok = np.isfinite(dp) & (df > 0.0)
        dp = np.where(ok, dp, 0.0)
        pn = np.maximum(p[active] - dp, 1e-16)
        conv = ok & (np.abs(dp) <= 1e-14 * pn)
        p[active] = pn
        nxt = active.copy()
        nxt[active] = ~conv
        active = nxt
        if not np.any(active):
            break

    if np.any(active):
        # Bisection rescue for points Newton did not settle.
        lo = np.full(np.count_nonzero(active), 1e-16)
        hi = 10.0 * Ef[active]
        dsub, m2sub, esub = Df[active], m2f[active], Ef[active]
        flo, _ = _pressure_residual(lo, dsub, m2sub, esub, gamma)
        fhi, _ = _pressure_residual(hi, dsub, m2sub, esub, gamma)
        if np.any(flo * fhi > 0.0):
            raise NonPhysicalState("pressure root not bracketed on [1e-16, 10E]")
        for _ in range(120):
            mid = 0.5 * (lo + hi)
            fm, _ = _pressure_residual(mid, dsub, m2sub, esub, gamma)
            take_lo = flo * fm <= 0.0
            hi = np.where(take_lo, mid, hi)
            lo = np.where(take_lo, lo, mid)
            flo = np.where(take_lo, flo, fm)
        p[active] = 0.5 * (lo + hi)

    p = p.reshape(np.shape(D))
    vel = mom / (E + p)
    w = PrimState(D * np.sqrt(1.0 - np.sum(vel * vel, axis=0)), vel, p)
    w.validate()
    return w


def physical_flux(w: PrimState, U: ConsState, axis: int = 0) -> np.ndarray:
    """Flux vector along ``axis``: (D u_a, m_i u_a + p delta_ia, m_a)."""
    ua = w.vel[axis]
    out = np.empty((w.d + 2,) + np.shape(w.rho), dtype=np.float64)
    out[0] = U.D * ua
    for i in range(w.d):
        out[1 + i] = U.mom[i] * ua
    out[1 + axis] = out[1 + axis] + w.p
    out[-1] = U.mom[axis]
    return out


def thermo_entropy(w: PrimState, eos: EosParams) -> np.ndarray:
    return np.log(w.p) - eos.gamma * np.log(w.rho)


def entropy_quantities(w: PrimState, eos: EosParams) -> EntropyQuantities:
    """Entropy pair, entropy variables and potentials for one state.

    eta = -rho W S / (gamma-1) with S = ln p - gamma ln rho; the potentials
    satisfy psi_a = V.F_a - q_a exactly in real arithmetic.
    """
    gm1 = eos.gamma - 1.0
    S = thermo_entropy(w, eos)
    W = w.lorentz()
    rhoW = w.rho * W
    eta = -rhoW * S / gm1
    q = eta * w.vel
    V = np.empty((w.d + 2,) + np.shape(w.rho), dtype=np.float64)
    V[0] = (eos.gamma - S) / gm1 + w.rho / w.p
    V[1:-1] = rhoW * w.vel / w.p
    V[-1] = -rhoW / w.p
    psi = rhoW * w.vel
    return EntropyQuantities(eta, q, V, psi)


def sound_speed(w: PrimState, eos: EosParams) -> np.ndarray:
    h = specific_enthalpy(w.rho, w.p, eos)
    return np.sqrt(eos.gamma * w.p / (w.rho * h))


def char_speeds(w: PrimState, eos: EosParams, axis: int = 0) -> np.ndarray:
    """Eigenvalues of the flux Jacobian along ``axis``, slowest first.

    1D: ((u-c)/(1-uc), u, (u+c)/(1+uc)); 2D adds the doubled material wave and
    couples the tangential velocity into the acoustic speeds.
    """
    cs = sound_speed(w, eos)
    un = w.vel[axis]
    if w.d == 1:
        lam_m = (un - cs) / (1.0 - un * cs)
        lam_p = (un + cs) / (1.0 + un * cs)
        return np.stack([lam_m, un, lam_p])
    v2 = w.speed2()
    cs2 = cs * cs
    Winv = np.sqrt(1.0 - v2)
    root = cs * Winv * np.sqrt(1.0 - un * un - (v2 - un * un) * cs2)
    denom = 1.0 - v2 * cs2
    lam_m = (un * (1.0 - cs2) - root) / denom
    lam_p = (un * (1.0 - cs2) + root) / denom
    return np.stack([lam_m, un, un, lam_p])


def max_signal_speed(w: PrimState, eos: EosParams, axis: int = 0) -> np.ndarray:
    return np.max(np.abs(char_speeds(w, eos, axis)), axis=0)
