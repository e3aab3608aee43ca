"""Fifth-order WENO interpolation of scaled entropy variables and the sign switch.

The interpolation acts on point values and recovers the exact interface value
of any polynomial of degree <= 4 in the linear-weight regime.  Dissipation is
gated per component: it is dropped wherever the reconstructed interface jump
disagrees in sign with the raw cell jump, which is what keeps the dissipation
term entropy-dissipative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .eigen import ScaledEigenSystem

WENO_EPS = 1e-6

# Optimal weights of the three-point interpolants toward the five-point
# midpoint interpolation (3, -20, 90, 60, -5)/128.
_D0, _D1, _D2 = 1.0 / 16.0, 10.0 / 16.0, 5.0 / 16.0


@dataclass
class InterfaceJumps:
    """Reconstructed and raw jumps of the scaled entropy variables w = R^T V."""

    w_jump_reconstructed: np.ndarray
    w_jump_raw: np.ndarray
    switch: np.ndarray


def _weno5_left(v0, v1, v2, v3, v4):
    """Left-biased interface value at x_{i+1/2} from point values at i-2..i+2."""
    b0 = (13.0 / 12.0) * (v0 - 2.0 * v1 + v2) ** 2 + 0.25 * (v0 - 4.0 * v1 + 3.0 * v2) ** 2
    b1 = (13.0 / 12.0) * (v1 - 2.0 * v2 + v3) ** 2 + 0.25 * (v1 - v3) ** 2
    b2 = (13.0 / 12.0) * (v2 - 2.0 * v3 + v4) ** 2 + 0.25 * (3.0 * v2 - 4.0 * v3 + v4) ** 2
    p0 = (3.0 * v0 - 10.0 * v1 + 15.0 * v2) / 8.0
    p1 = (-v1 + 6.0 * v2 + 3.0 * v3) / 8.0
    p2 = (3.0 * v2 + 6.0 * v3 - v4) / 8.0
    a0 = _D0 / (WENO_EPS + b0) ** 2
    a1 = _D1 / (WENO_EPS + b1) ** 2
    a2 = _D2 / (WENO_EPS + b2) ** 2
    return (a0 * p0 + a1 * p1 + a2 * p2) / (a0 + a1 + a2)


def weno5_reconstruct(stencil, side: str):
    """WENO5 interface value at x_{i+1/2} from 5 point values.

    ``side='left'`` interpolates from cells i-2..i+2, ``side='right'`` from the
    mirrored stencil i-1..i+3 (pass those five values).
    """
    v = [np.asarray(s, dtype=np.float64) for s in stencil]
    if len(v) != 5:
        raise ValueError("WENO5 needs exactly 5 stencil values")
    if side == "left":
        return _weno5_left(*v)
    if side == "right":
        return _weno5_left(*v[::-1])
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def scaled_variable_jumps(stencil_V, sys: ScaledEigenSystem) -> InterfaceJumps:
    """Jumps of w = R^T V at the interface i+1/2 from the 6-cell stencil i-2..i+3.

    ``stencil_V`` holds six entropy-variable arrays of shape (n, ...); the
    eigensystem is the one frozen at this interface.
    """
    # w_j = R^T V_j, components moved to the trailing axis for the matrix op.
    w = [np.einsum("...ij,...i->...j", sys.R, np.moveaxis(V, 0, -1)) for V in stencil_V]
    w_minus = _weno5_left(w[0], w[1], w[2], w[3], w[4])
    w_plus = _weno5_left(w[5], w[4], w[3], w[2], w[1])
    rec = w_plus - w_minus
    raw = w[3] - w[2]
    sgn = np.sign(rec)
    switch = ((sgn == np.sign(raw)) & (sgn != 0.0)).astype(np.float64)
    return InterfaceJumps(rec, raw, switch)
