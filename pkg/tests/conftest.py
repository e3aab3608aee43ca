import numpy as np

from esrhd.state import PrimState


def random_states(rng, n, d=1, vmax=0.9, log_lo=-3.0, log_hi=3.0):
    """Batch of admissible primitive states with log-uniform rho, p."""
    rho = np.exp(rng.uniform(log_lo, log_hi, n))
    p = np.exp(rng.uniform(log_lo, log_hi, n))
    mag = rng.uniform(0.0, vmax, n)
    if d == 1:
        sign = np.where(rng.random(n) < 0.5, -1.0, 1.0)
        vel = (mag * sign)[None]
    else:
        ang = rng.uniform(0.0, 2.0 * np.pi, n)
        vel = np.stack([mag * np.cos(ang), mag * np.sin(ang)])
    return PrimState(rho, vel, p)


def random_pairs(rng, n, d=1, vmax=0.9, log_lo=-3.0, log_hi=3.0):
    from esrhd.means import StatePair

    return StatePair(random_states(rng, n, d, vmax, log_lo, log_hi),
                     random_states(rng, n, d, vmax, log_lo, log_hi))
