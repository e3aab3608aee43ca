import numpy as np
import pytest

from conftest import random_pairs, random_states
from esrhd.ecflux import (SIXTH_ORDER_WEIGHTS, ec_denominator_1d,
                          ec_denominator_2d, ec_flux_1d, ec_flux_2d,
                          ec_flux_high_order)
from esrhd.means import StatePair, mean
from esrhd.state import (EosParams, PrimState, entropy_quantities,
                         physical_flux, prim_to_cons)

EOS = EosParams(5.0 / 3.0)


def tadmor_residual(pair, flux, axis):
    """[[V]].F - [[psi_axis]] scaled by the size of the cancelling terms."""
    ql = entropy_quantities(pair.left, EOS)
    qr = entropy_quantities(pair.right, EOS)
    dV = qr.V - ql.V
    dpsi = qr.psi[axis] - ql.psi[axis]
    resid = np.einsum("i...,i...->...", dV, flux) - dpsi
    scale = np.sum(np.abs(dV * flux), axis=0) + np.abs(dpsi) + 1e-300
    return np.abs(resid) / scale


def test_ec_flux_1d_consistency():
    w = PrimState(1.3, [0.45], 0.8)
    F = ec_flux_1d(StatePair(w, w), EOS)
    expect = physical_flux(w, prim_to_cons(w, EOS), 0)
    assert np.max(np.abs(F - expect)) < 1e-13 * np.max(np.abs(expect))


def test_ec_flux_1d_tadmor_condition():
    rng = np.random.default_rng(31)
    pair = random_pairs(rng, 10_000, d=1, vmax=0.95)
    F = ec_flux_1d(pair, EOS)
    assert np.max(tadmor_residual(pair, F, 0)) < 1e-12


def test_ec_denominator_1d_closed_form():
    # Q = <rho/p> W_L W_R for unequal velocities as well
    rng = np.random.default_rng(37)
    pair = random_pairs(rng, 5000, d=1, vmax=0.95)
    q = ec_denominator_1d(pair)
    z2m = mean(pair.left.rho / pair.left.p, pair.right.rho / pair.right.p)
    expect = z2m * pair.left.lorentz() * pair.right.lorentz()
    assert np.max(np.abs(q / expect - 1.0)) < 1e-13
    assert np.all(q > 0.0)


def test_ec_denominator_positive_near_luminal():
    rng = np.random.default_rng(41)
    p1 = random_pairs(rng, 2000, d=1, vmax=0.999)
    assert np.all(ec_denominator_1d(p1) > 0.0)
    p2 = random_pairs(rng, 2000, d=2, vmax=0.999)
    assert np.all(ec_denominator_2d(p2) > 0.0)


@pytest.mark.parametrize("axis", [0, 1])
def test_ec_flux_2d_consistency(axis):
    w = PrimState(2.1, [0.3, -0.5], 1.7)
    F = ec_flux_2d(StatePair(w, w), EOS, axis)
    expect = physical_flux(w, prim_to_cons(w, EOS), axis)
    assert np.max(np.abs(F - expect)) < 1e-13 * np.max(np.abs(expect))


@pytest.mark.parametrize("axis", [0, 1])
def test_ec_flux_2d_tadmor_condition(axis):
    rng = np.random.default_rng(43 + axis)
    pair = random_pairs(rng, 10_000, d=2, vmax=0.95)
    F = ec_flux_2d(pair, EOS, axis)
    assert np.max(tadmor_residual(pair, F, axis)) < 1e-12


def test_ec_flux_2d_reduces_to_1d():
    rng = np.random.default_rng(47)
    w1 = random_pairs(rng, 2000, d=1, vmax=0.9)
    zeros = np.zeros_like(w1.left.vel[0])
    pair2 = StatePair(
        PrimState(w1.left.rho, np.stack([w1.left.vel[0], zeros]), w1.left.p),
        PrimState(w1.right.rho, np.stack([w1.right.vel[0], zeros]), w1.right.p))
    F2 = ec_flux_2d(pair2, EOS, 0)
    F1 = ec_flux_1d(w1, EOS)
    assert np.max(np.abs(F2[[0, 1, 3]] - F1)) < 1e-13 * (1.0 + np.max(np.abs(F1)))
    assert np.max(np.abs(F2[2])) == 0.0


def test_sixth_order_weights():
    assert SIXTH_ORDER_WEIGHTS == (1.5, -0.3, 1.0 / 30.0)
    # weights are applied to 1, 2, and 3 pair fluxes respectively
    assert 1.5 - 2 * 0.3 + 3 / 30.0 == pytest.approx(1.0, abs=0)


def test_ec_flux_high_order_constant_stencil():
    w = PrimState(1.1, [0.25], 0.9)
    F = ec_flux_high_order([w] * 6, EOS)
    expect = physical_flux(w, prim_to_cons(w, EOS), 0)
    assert np.max(np.abs(F - expect)) < 1e-13 * np.max(np.abs(expect))


def test_ec_flux_high_order_needs_six_states():
    w = PrimState(1.0, [0.0], 1.0)
    with pytest.raises(ValueError):
        ec_flux_high_order([w] * 5, EOS)


def test_ec_flux_high_order_sixth_order_differences():
    # flux differences of the combined flux approximate dF/dx at 6th order
    def fields(n):
        x = (np.arange(-3, n + 3) + 0.5) * (2 * np.pi / n)
        return x, PrimState(2.0 + np.sin(x), np.full(x.shape, 0.2)[None],
                            np.ones_like(x))

    def dflux(x):
        u = 0.2
        W2 = 1.0 / (1.0 - u * u)
        c = np.cos(x)
        return np.stack([np.sqrt(W2) * u * c, W2 * u * u * c, W2 * u * c])

    errs = []
    for n in (32, 64, 128):
        dx = 2 * np.pi / n
        x, w = fields(n)
        stencils = [PrimState(w.rho[j:j + n + 1], w.vel[:, j:j + n + 1],
                              w.p[j:j + n + 1]) for j in range(6)]
        fhat = ec_flux_high_order(stencils, EOS)
        interior = (x[3:3 + n],)
        err = np.max(np.abs((fhat[:, 1:] - fhat[:, :-1]) / dx - dflux(*interior)))
        errs.append(err)
    orders = [np.log2(errs[i] / errs[i + 1]) for i in range(len(errs) - 1)]
    assert orders[-1] > 5.5
    assert orders[-1] > orders[0] - 0.5  # approaching the design order 6
