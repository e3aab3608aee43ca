import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import random_pairs
from esrhd.means import (StatePair, jump, ln_mean, lorentz_mean_1d,
                         lorentz_mean_2d, mean)
from esrhd.state import PrimState

positive = st.floats(1e-6, 1e6)


def test_mean_and_jump():
    assert mean(1.0, 3.0) == 2.0
    assert jump(1.0, 3.0) == 2.0
    assert jump(5.0, 5.0) == 0.0


def test_product_jump_identity():
    # [[ab]] = <a>[[b]] + <b>[[a]]
    rng = np.random.default_rng(5)
    a = rng.uniform(-10, 10, (2, 10_000))
    b = rng.uniform(-10, 10, (2, 10_000))
    lhs = jump(a[0] * b[0], a[1] * b[1])
    rhs = mean(a[0], a[1]) * jump(b[0], b[1]) + mean(b[0], b[1]) * jump(a[0], a[1])
    assert np.max(np.abs(lhs - rhs) / (np.abs(lhs) + 1.0)) < 1e-14


def test_ln_mean_equal_args():
    assert ln_mean(3.7, 3.7) == 3.7


def test_ln_mean_closed_form():
    assert float(ln_mean(1.0, np.e)) == pytest.approx(1.7182818284590452, rel=1e-15)


def test_ln_mean_near_equal_branch():
    # frozen from a 50-digit evaluation of (b-1)/ln(b) at b = 1 + 1e-9
    got = float(ln_mean(1.0, 1.0 + 1e-9))
    assert got == pytest.approx(1.0000000004999999999, rel=1e-14)


def test_ln_mean_branch_continuity():
    # values on both sides of the series cut agree with the direct quotient
    for ratio in (1.005, 1.02, 1.05):
        direct = (ratio - 1.0) / np.log(ratio)
        assert float(ln_mean(1.0, ratio)) == pytest.approx(direct, rel=1e-13)


@given(a=positive, b=positive)
def test_ln_mean_symmetry_and_bounds(a, b):
    m = float(ln_mean(a, b))
    assert m == float(ln_mean(b, a))
    assert min(a, b) - 1e-12 * a <= m <= 0.5 * (a + b) * (1.0 + 1e-12)


def test_lorentz_mean_equal_args():
    # at uL = uR = u the mean is u W^3
    for u in (0.0, 0.3, -0.8):
        W = 1.0 / np.sqrt(1.0 - u * u)
        assert float(lorentz_mean_1d(u, u)) == pytest.approx(u * W ** 3, abs=1e-15)


def test_lorentz_mean_odd_symmetry():
    assert float(lorentz_mean_1d(-0.4, 0.4)) == 0.0


def test_lorentz_mean_jump_ratio():
    # frozen: (W(0.5) - W(0.2)) / 0.3 from a 50-digit evaluation
    assert float(lorentz_mean_1d(0.2, 0.5)) == pytest.approx(
        0.44693270739864663, rel=1e-15)


def test_lorentz_mean_1d_jump_decomposition():
    rng = np.random.default_rng(7)
    uL = rng.uniform(-0.95, 0.95, 10_000)
    uR = rng.uniform(-0.95, 0.95, 10_000)
    WL = 1.0 / np.sqrt(1.0 - uL ** 2)
    WR = 1.0 / np.sqrt(1.0 - uR ** 2)
    resid = (WR - WL) - lorentz_mean_1d(uL, uR) * (uR - uL)
    assert np.max(np.abs(resid) / (np.abs(WR - WL) + 1.0)) < 1e-14


def test_lorentz_mean_2d_identical_states():
    u, v = 0.3, -0.2
    W = 1.0 / np.sqrt(1.0 - u * u - v * v)
    pair = StatePair(PrimState(1.0, [u, v], 1.0), PrimState(1.0, [u, v], 1.0))
    mx, my = lorentz_mean_2d(pair)
    assert float(mx) == pytest.approx(u * W ** 3, rel=1e-15)
    assert float(my) == pytest.approx(v * W ** 3, rel=1e-15)


def test_lorentz_mean_2d_reduces_to_1d():
    pair = StatePair(PrimState(1.0, [0.25, 0.0], 1.0), PrimState(1.0, [0.6, 0.0], 1.0))
    mx, my = lorentz_mean_2d(pair)
    assert float(my) == 0.0
    assert float(mx) == pytest.approx(float(lorentz_mean_1d(0.25, 0.6)), rel=1e-15)


def test_lorentz_mean_2d_jump_decomposition():
    rng = np.random.default_rng(13)
    pair = random_pairs(rng, 10_000, d=2, vmax=0.95)
    WL, WR = pair.left.lorentz(), pair.right.lorentz()
    mx, my = lorentz_mean_2d(pair)
    du = pair.right.vel[0] - pair.left.vel[0]
    dv = pair.right.vel[1] - pair.left.vel[1]
    resid = (WR - WL) - (mx * du + my * dv)
    assert np.max(np.abs(resid) / (np.abs(WR - WL) + 1.0)) < 1e-14
