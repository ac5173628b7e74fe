import numpy as np
import pytest

from separability import linalg
from separability.diagnostics import (
    cross_gram,
    cross_gram_diagnostic,
    n_mu,
    n_mu_interval,
    purification_from_basis,
    purify,
)
from separability.errors import DimensionError
from separability.states import (
    DensityMatrix,
    PureState,
    bell_state,
    projector,
    random_density,
    random_pure,
    random_separable,
    spectra_twins,
)

from oracles import ensemble_cross_sums, grid_mu_interval


def _pc(p):
    """rho_AB back from a purification."""
    t = p.tensor().reshape(p.dims[0] * p.dims[1], p.dims[2])
    return t @ t.conj().T


def test_purify_pure_input():
    psi = random_pure(6, 2)
    p = purify(projector(PureState((2, 3), psi.amplitudes)))
    assert p.kept_rank == 1
    assert p.dims == (2, 3, 1)
    overlap = abs(np.vdot(psi.amplitudes, p.state.amplitudes))
    assert overlap == pytest.approx(1, abs=1e-12)


def test_purify_maximally_mixed():
    p = purify(DensityMatrix(np.eye(4) / 4, (2, 2)))
    assert p.kept_rank == 4
    assert np.linalg.norm(p.tensor().reshape(4, 4), axis=0) == pytest.approx([0.5] * 4, abs=1e-15)


@pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 3)])
def test_purify_round_trip(dims):
    for seed in range(200 // 3):
        rho = random_density(dims, seed)
        assert np.linalg.norm(_pc(purify(rho)) - rho.mat) <= 1e-9


def test_purify_bipartition_regroups_subsystems():
    rho, _ = random_separable((2, 3, 2), 3, 5)
    p = purify(rho, ((0, 2), (1,)))
    assert p.dims[:2] == (4, 3)
    expected = linalg.permute_subsystems(rho.mat, rho.dims, (0, 2, 1))
    assert np.linalg.norm(_pc(p) - expected) <= 1e-9
    with pytest.raises(DimensionError):
        purify(rho)
    with pytest.raises(DimensionError):
        purify(rho, ((0,), (1,)))


def test_cross_gram_pure_product_has_no_gap():
    a, b = random_pure(2, 1).amplitudes, random_pure(3, 2).amplitudes
    psi = np.kron(a, b)
    rep = cross_gram_diagnostic(DensityMatrix(np.outer(psi, psi.conj()), (2, 3)))
    assert rep.dist_full <= 1e-12
    np.testing.assert_allclose(rep.k, rep.s, atol=1e-12)


def test_cross_gram_sigma_twin_matches_ensemble_sum():
    _, sigma = spectra_twins()
    e0, e1 = np.array([1, 0]), np.array([0, 1])
    k, s = ensemble_cross_sums([2 / 3, 1 / 3], [e0, e1], [e0, e1])
    rep = cross_gram_diagnostic(sigma)
    np.testing.assert_allclose(rep.k, k, atol=1e-12)
    np.testing.assert_allclose(rep.s, s, atol=1e-12)
    assert rep.dist_full == pytest.approx(0.0, abs=1e-12)


def test_cross_gram_phi_plus():
    # C is one-dimensional, so k = rho_A (x) rho_B = I/4 while s = |phi+><phi+|
    rep = cross_gram_diagnostic(projector(bell_state("phi+")))
    p = projector(bell_state("phi+")).mat
    np.testing.assert_allclose(rep.s, p, atol=1e-15)
    np.testing.assert_allclose(rep.k, np.eye(4) / 4, atol=1e-15)
    assert rep.dist_full == pytest.approx(np.sqrt(3) / 2, abs=1e-14)


def test_traced_distances_vanish():
    for seed in range(10):
        rep = cross_gram_diagnostic(random_density((2, 3), seed))
        assert rep.dist_full > 1e-3
        assert rep.dist_traced_A <= 1e-14
        assert rep.dist_traced_B <= 1e-14


def test_cross_gram_is_basis_independent_for_degenerate_spectrum():
    # spectrum (1/2, 1/4, 1/4, 0): rotate the degenerate pair of eigenvectors
    rng = np.random.default_rng(1)
    u = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))[0]
    w = np.array([0.5, 0.25, 0.25, 0.0])
    rho = DensityMatrix(u @ np.diag(w) @ u.conj().T, (2, 2))
    base = cross_gram(purification_from_basis(w, u, 2, 2, 1e-9))
    theta = 0.7
    rot = np.array([[np.cos(theta), -np.exp(0.3j) * np.sin(theta)], [np.exp(-0.3j) * np.sin(theta), np.cos(theta)]])
    u2 = u.copy()
    u2[:, 1:3] = u[:, 1:3] @ rot
    shuffled = cross_gram(purification_from_basis(w, u2, 2, 2, 1e-9))
    for name in ("dist_full", "dist_traced_A", "dist_traced_B"):
        assert getattr(shuffled, name) == pytest.approx(getattr(base, name), abs=1e-14)
    np.testing.assert_allclose(shuffled.k, base.k, atol=1e-14)
    assert cross_gram_diagnostic(rho).dist_full == pytest.approx(base.dist_full, abs=1e-12)


def test_n_mu_basics():
    rho = random_density((2, 3), 4)
    prod = np.kron(rho.reduced([0]), rho.reduced([1]))
    np.testing.assert_array_equal(n_mu(rho, 0.0), prod)
    for mu in (-3.0, 0.5, 10.0):
        assert abs(np.trace(n_mu(rho, mu)) - 1) < 1e-12
    pa, pb = random_density(2, 1).mat, random_density(3, 2).mat
    product = DensityMatrix(np.kron(pa, pb), (2, 3))
    for mu in (-5.0, 7.0):
        np.testing.assert_allclose(n_mu(product, mu), np.kron(pa, pb), atol=1e-13)
    with pytest.raises(DimensionError):
        n_mu(random_separable((2, 2, 2), 1, 0)[0], 0.1)


def test_n_mu_interval_product_state_hits_bounds():
    product = DensityMatrix(np.kron(random_density(2, 1).mat, random_density(2, 2).mat), (2, 2))
    iv = n_mu_interval(product)
    assert (iv.mu_min, iv.mu_max, iv.bound_hit) == (-64.0, 64.0, (True, True))


def test_n_mu_interval_phi_plus():
    # N(mu) = (1+mu) I/4 - mu |phi+><phi+| has eigenvalues (1+mu)/4 (x3) and (1-3mu)/4
    rho = projector(bell_state("phi+"))
    iv = n_mu_interval(rho)
    assert iv.bound_hit == (False, False)
    assert iv.mu_min == pytest.approx(-1.0, abs=1e-6)
    assert iv.mu_max == pytest.approx(1 / 3, abs=1e-6)
    for end, step in ((iv.mu_min, -1e-6), (iv.mu_max, 1e-6)):
        assert linalg.min_eigenvalue(n_mu(rho, end)) >= -1e-9
        assert linalg.min_eigenvalue(n_mu(rho, end + step)) < -1e-9
    lo, hi = grid_mu_interval(rho.mat, (2, 2))
    assert abs(lo - iv.mu_min) <= 2e-3 and abs(hi - iv.mu_max) <= 2e-3


def test_n_mu_interval_contains_zero():
    for seed in range(10):
        iv = n_mu_interval(random_density((2, 2), seed))
        assert iv.mu_min <= 0 <= iv.mu_max
