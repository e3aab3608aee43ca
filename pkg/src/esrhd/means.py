"""Two-point averaging operators used by the entropy conservative fluxes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .state import PrimState

# Threshold on the squared relative spread below which the logarithmic mean
# switches to its series form; keeps the truncation error under 1e-16.
_LN_MEAN_SERIES_CUT = 1e-4


@dataclass
class StatePair:
    """Left/right primitive states across one interface."""

    left: PrimState
    right: PrimState

    @property
    def d(self) -> int:
        return self.left.d


def mean(aL, aR):
    return 0.5 * (aL + aR)


def jump(aL, aR):
    return np.subtract(aR, aL)


def ln_mean(aL, aR):
    """Logarithmic mean (aR-aL)/(ln aR - ln aL) for positive arguments.

    Uses the series form in (aL-aR)/(aL+aR) near equal arguments, which is
    exact at aL == aR and stable where the direct quotient cancels.  Arguments
    are ordered first so the result is bitwise symmetric.
    """
    lo = np.minimum(aL, aR).astype(np.float64)
    hi = np.maximum(aL, aR).astype(np.float64)
    zeta = lo / hi
    f = (zeta - 1.0) / (zeta + 1.0)
    s = f * f
    series = (lo + hi) / (2.0 * (1.0 + s * (1.0 / 3.0 + s * (1.0 / 5.0 + s / 7.0))))
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = (lo - hi) / np.log(zeta)
    return np.where(s < _LN_MEAN_SERIES_CUT, series, direct)


def lorentz_mean_1d(uL, uR):
    """Mean expressing the Lorentz-factor jump: W_R - W_L = result * (uR - uL)."""
    gL = np.sqrt(1.0 - uL * uL)
    gR = np.sqrt(1.0 - uR * uR)
    return (uL + uR) / (gL * gR * (gL + gR))


def lorentz_mean_2d(pair: StatePair):
    """The two means decomposing W_R - W_L over the (u, v) jumps in 2D."""
    uL, vL = pair.left.vel[0], pair.left.vel[1]
    uR, vR = pair.right.vel[0], pair.right.vel[1]
    gL = np.sqrt(1.0 - uL * uL - vL * vL)
    gR = np.sqrt(1.0 - uR * uR - vR * vR)
    denom = gL * gR * (gL + gR)
    return (uL + uR) / denom, (vL + vR) / denom
