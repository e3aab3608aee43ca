import numpy as np
import pytest

from esrhd.bench import (ConvergenceRow, ProblemSpec, catalogue,
                         convergence_study, error_norms, exact_density,
                         get_problem, problem_grid, reference_solution,
                         scheme_config, schlieren)
from esrhd.scheme import FluxMode, Grid, make_field
from esrhd.state import EosParams, PrimState

EXPECTED_NAMES = {"acc1d", "rp1", "rp2", "rp3", "rp4", "dp", "blast",
                  "acc2d", "2drp1", "2drp2", "2drp3", "sb", "sv"}


def test_catalogue_contains_thirteen_problems():
    specs = catalogue()
    assert len(specs) == 13
    assert {s.name for s in specs} == EXPECTED_NAMES


def test_acc1d_exact_solution():
    spec = get_problem("acc1d")
    x = np.linspace(0.0, 2.0 * np.pi, 7)
    w = spec.exact(x, 0.5)
    assert np.allclose(w.rho, 1.0 + 0.2 * np.sin(x - 0.1), rtol=1e-15)
    assert np.all(w.vel[0] == 0.2)
    assert np.all(w.p == 1.0)


def test_shock_vortex_post_shock_state():
    spec = get_problem("sv")
    # post-shock constants hold left of the standing shock at x = -6
    w = spec.ic(np.array([-10.0]), np.array([0.0]))
    assert float(w.rho[0]) == 4.891497310766981
    assert float(w.vel[0][0]) == -0.388882958251919
    assert float(w.vel[1][0]) == 0.0
    assert float(w.p[0]) == 11.894863258311670
    # far from the vortex core the state approaches the uniform pre-shock flow
    w2 = spec.ic(np.array([2.5]), np.array([4.0]))
    assert float(w2.rho[0]) == pytest.approx(1.0, abs=1e-6)
    assert float(w2.vel[0][0]) == pytest.approx(-0.9, abs=1e-6)
    assert float(w2.vel[1][0]) == pytest.approx(0.0, abs=1e-6)
    assert float(w2.p[0]) == pytest.approx(1.0, abs=1e-6)


def test_gamma_overrides():
    gammas = {s.name: s.gamma for s in catalogue()}
    assert gammas["rp3"] == pytest.approx(4.0 / 3.0)
    assert gammas["blast"] == pytest.approx(1.4)
    assert gammas["sv"] == pytest.approx(1.4)
    assert gammas["acc1d"] == pytest.approx(5.0 / 3.0)


def test_all_initial_conditions_admissible():
    for spec in catalogue():
        grid = problem_grid(spec, 24, 24 if spec.d == 2 else None)
        fld = make_field(grid, spec.ic, EosParams(spec.gamma))
        w = fld.interior_prim()
        assert np.all(w.rho > 0.0) and np.all(w.p > 0.0)
        assert np.all(w.speed2() < 1.0)


def test_acc2d_vortex_periodic_return():
    spec = get_problem("acc2d")
    x = np.linspace(-5.0, 5.0, 9)
    X, Y = np.meshgrid(x, x, indexing="ij")
    w0 = spec.ic(X, Y)
    wT = spec.exact(X, Y, 20.0)
    assert np.allclose(w0.rho, wT.rho, rtol=1e-12)
    assert np.allclose(w0.vel, wT.vel, atol=1e-12)


def test_sb_bubble_density_parameter():
    spec = get_problem("sb", sb_bubble_rho=0.25)
    w = spec.ic(np.array([45.0]), np.array([45.0]))
    assert float(w.rho[0]) == 0.25


def test_error_norms_basics():
    a = np.ones((4, 4))
    assert error_norms(a, a) == (0.0, 0.0, 0.0)
    b = a + 0.5
    l1, l2, linf = error_norms(b, a)
    assert (l1, l2, linf) == (0.5, 0.5, 0.5)
    with pytest.raises(ValueError):
        error_norms(np.ones(3), np.ones(4))


def test_exact_density_requires_exact():
    spec = get_problem("rp1")
    with pytest.raises(ValueError):
        exact_density(spec, problem_grid(spec, 16), 0.1)


def test_convergence_study_is_deterministic():
    spec = get_problem("acc1d")
    rows1 = convergence_study(spec, [16, 32])
    rows2 = convergence_study(spec, [16, 32])
    assert rows1 == rows2
    assert rows1[0].order_l1 is None
    assert rows1[1].order_l1 is not None
    assert rows1[1].err_l1 < rows1[0].err_l1


def test_reference_solution_constant_problem():
    const = ProblemSpec(
        name="const", d=1, xlim=(0.0, 1.0), gamma=5.0 / 3.0,
        ic=lambda x: PrimState(np.full_like(x, 1.5), np.full_like(x, 0.1)[None],
                               np.full_like(x, 2.0)),
        bc_kinds=("outflow", "outflow"), t_end=0.05, default_nx=20)
    w, grid = reference_solution(const, 100)
    assert grid.nx == 20
    assert np.allclose(w.rho, 1.5, rtol=1e-12)
    assert np.allclose(w.vel[0], 0.1, rtol=1e-10)


def test_reference_solution_validates_multiples():
    spec = get_problem("rp1")
    with pytest.raises(ValueError):
        reference_solution(spec, 1001, 400)


def test_reference_shock_position_stable_under_refinement():
    spec = get_problem("rp1")
    w1, grid = reference_solution(spec, 800, nx=100)
    w2, _ = reference_solution(spec, 1600, nx=100)
    i1 = int(np.argmax(np.abs(np.diff(w1.rho))))
    i2 = int(np.argmax(np.abs(np.diff(w2.rho))))
    assert abs(i1 - i2) <= 1


def test_reference_total_variation_bounded():
    spec = get_problem("rp1")
    w1, _ = reference_solution(spec, 400, nx=100)
    w2, _ = reference_solution(spec, 800, nx=100)
    tv1 = np.sum(np.abs(np.diff(w1.rho)))
    tv2 = np.sum(np.abs(np.diff(w2.rho)))
    assert tv2 < 1.1 * tv1 + 1e-12


def test_schlieren_flat_field_is_zero():
    g = Grid.make_2d((0.0, 1.0), (0.0, 1.0), 8, 8)
    s = schlieren(np.ones((8, 8)), g)
    assert s.shape == (8, 8)
    assert np.allclose(s, 0.0)
