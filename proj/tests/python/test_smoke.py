"""Smoke tests for the python bindings: each main operation runs end to end
and returns sane values. Heavier numerics live in the C++ suites."""

import math

import numpy as np
import pytest

import aggstat


@pytest.fixture(scope="module")
def pot1d():
    return aggstat.Potential.gaussian(sigma=1.0, dim=1)


def test_potential_evaluation(pot1d):
    assert pot1d.g(0.0) == pytest.approx(1.0 / math.sqrt(2.0 * math.pi), rel=1e-12)
    assert pot1d.g_prime(1.0) == pytest.approx(-pot1d.g(1.0), rel=1e-12)
    assert aggstat.lp_norm(pot1d, 1.0) == pytest.approx(1.0, abs=1e-8)
    imq = aggstat.Potential.inverse_multiquadric(a=1.0, p=2.0, dim=2)
    assert imq.g(3.0) < imq.g(0.0)


def test_validation_flags(pot1d):
    rep = aggstat.validate(pot1d)
    assert rep["passed"]
    assert rep["normalization_ok"]


def test_grid_and_mass():
    grid = aggstat.make_grid(dim=3, radius=1.0, n=96)
    nodes = np.asarray(grid.nodes)
    assert nodes[0] == 0.0 and nodes[-1] == 1.0
    ones = np.ones(len(grid))
    assert aggstat.mass(grid, ones) == pytest.approx(4.0 * math.pi / 3.0, rel=1e-10)


def test_kernels_and_convolution(pot1d):
    grid = aggstat.make_grid(dim=1, radius=1.0, n=65)
    ker = aggstat.assemble_kernels(pot1d, grid, angular_n=16)
    H = np.asarray(ker.H)
    assert np.all(H[0, :] == 0.0)
    conv = aggstat.convolve(ker, np.ones(len(grid)))
    assert np.all(np.asarray(conv) > 0.0)


def test_stationary_and_eigen_agree(pot1d):
    st = aggstat.solve_stationary(pot1d, m=2.0, R=1.0, n=129, angular_n=16)
    ei = aggstat.solve_eigen(pot1d, R=1.0, n=129, angular_n=16)
    assert st["epsilon"] == pytest.approx(ei["epsilon"], abs=1e-8)
    assert 0.0 < st["epsilon"] < 1.0
    assert st["residual"] <= 1e-6
    rho = np.asarray(st["rho"])
    assert rho.min() >= 0.0
    assert rho[-1] == 0.0


def test_curve_monotone(pot1d):
    pts = aggstat.epsilon_of_R_curve(pot1d, m=2.0, radii=[0.5, 1.0, 2.0], n=97, angular_n=16)
    eps = [p["epsilon"] for p in pts]
    assert all(p["ok"] for p in pts)
    assert eps == sorted(eps)


def test_minimize_and_radius_inversion(pot1d):
    ref = aggstat.solve_R_for_epsilon(pot1d, epsilon=0.5, n=129, angular_n=16)
    res = aggstat.minimize_global(pot1d, m=2.0, epsilon=0.5, n=129, angular_n=16)
    assert res["status"] == "converged"
    assert res["energy"] < 0.0
    assert res["support_radius"] == pytest.approx(ref["R"], rel=0.05)

    bad = aggstat.minimize_global(pot1d, m=2.0, epsilon=1.2, n=97, angular_n=16)
    assert bad["status"] == "no_minimizer"


def test_thresholds(pot1d):
    th = aggstat.estimate_thresholds(pot1d, m=1.5, sweep=[1.0, 4.0, 16.0], n=129, angular_n=16)
    assert 0.0 < th["epsilon0"] <= th["epsilon0_upper_bound"] + 1e-8
    assert th["epsilon1_empirical"] < th["epsilon1_ceiling"]
    assert th["all_below_ceiling"]


def test_dense_oracle(pot1d):
    dense = aggstat.dense_eig_1d(pot1d, L=1.0, n=97)
    mags = dense["eigenvalue_magnitudes"]
    assert mags[0] > mags[1]
    assert dense["spectral_gap"] > 0.0
