"""Acceptance gate. Each test carries an ``acceptance`` marker; conftest prints one line per criterion."""

import itertools
import subprocess
import sys

import numpy as np
import pytest

from separability import linalg
from separability.criteria import (
    ENTANGLED,
    PERES_R,
    SEPARABLE,
    full_verdict,
    majorization_check,
    ppt_check,
    purity_chain_check,
    theorem2_check,
    theorem3_trace_check,
    upsilon_R,
)
from separability.diagnostics import cross_gram_diagnostic, n_mu, n_mu_interval
from separability.rng import derive_seed
from separability.statefile import write_state
from separability.states import DensityMatrix, phi_mixture, random_density, random_separable, spectra_twins

from oracles import brute_partial_trace, ensemble_cross_sums, grid_mu_interval, hermitian_eigs_by_charpoly

ac = pytest.mark.acceptance


@ac(1, "phi mixture sweep: violated iff lambda != 1/2, closed-form margins to 1e-9")
@pytest.mark.parametrize("lam", [round(0.1 * i, 1) for i in range(11)])
def test_phi_mixture_sweep(lam):
    rho = phi_mixture(lam)
    reports = [purity_chain_check(rho), theorem3_trace_check(rho), ppt_check(rho), theorem2_check(rho)]
    expected = lam == 0.5
    assert [r.satisfied for r in reports] == [expected] * 4
    chain, trace, ppt, _ = reports
    assert abs(chain.margin - (-2 * (lam - 0.5) ** 2)) <= 1e-9
    assert abs(trace.margin - (-((2 * lam - 1) ** 2) / 4)) <= 1e-9
    assert abs(ppt.margin - (-abs(2 * lam - 1) / 2)) <= 1e-9


@ac(2, "isospectral pair: equal spectra, PPT separates, verdicts Entangled/Separable")
def test_isospectral_pair():
    rho, sigma = spectra_twins()
    for keep in (None, [0], [1]):
        a = rho.mat if keep is None else rho.reduced(keep)
        b = sigma.mat if keep is None else sigma.reduced(keep)
        np.testing.assert_allclose(linalg.eigvalsh(a), linalg.eigvalsh(b), rtol=0, atol=1e-9)
        np.testing.assert_allclose(np.linalg.eigvalsh(a), np.linalg.eigvalsh(b), rtol=0, atol=1e-9)
    for s in (rho, sigma):
        assert abs(purity_chain_check(s).margin) <= 1e-9
        assert abs(majorization_check(s).margin) <= 1e-9
    assert ppt_check(sigma).satisfied
    rep = ppt_check(rho)
    assert not rep.satisfied
    assert abs(rep.margin - (1 - np.sqrt(5)) / 6) <= 1e-9
    assert full_verdict(sigma).conclusion == SEPARABLE
    assert full_verdict(rho).conclusion == ENTANGLED


SOUNDNESS_DIMS = [(2, 2), (2, 3), (2, 4), (3, 3), (2, 2, 2)]


def _applicable(dims):
    names = {"purity_chain"} | {f"ppt[{s}]" for s in range(len(dims))}
    if len(dims) == 2:
        names.add("majorization")
        if 2 in dims:
            names |= {"theorem2", "theorem3_sphere", "theorem3_trace"}
    return names


@ac(3, "soundness: 1000 random separable states, zero violations")
@pytest.mark.parametrize("dims", SOUNDNESS_DIMS)
def test_soundness_sweep(dims):
    base = derive_seed(3, len(dims) * 10 + dims[-1])
    for i in range(200):
        rho, _ = random_separable(dims, 1 + i % 6, derive_seed(base, i))
        v = full_verdict(rho)
        assert {r.criterion for r in v.reports} == _applicable(dims)
        assert v.certificates == [], (dims, i, [(r.criterion, r.margin) for r in v.certificates])
        assert v.conclusion != ENTANGLED


@ac(4, "Peres member: upsilon_R(diag(1,-1,1)) == partial transpose; theorem2 margin <= PPT margin")
@pytest.mark.parametrize("n", [2, 3, 4])
def test_peres_equivalence(n):
    count = {2: 67, 3: 67, 4: 66}[n]
    for seed in range(count):
        rho = random_density((2, n), derive_seed(4, 100 * n + seed))
        up = upsilon_R(rho, PERES_R)
        pt = linalg.partial_transpose(rho.mat, rho.dims, 0)
        assert np.max(np.abs(up - pt)) <= 1e-15
        assert theorem2_check(rho).margin <= ppt_check(rho).margin + 1e-12


@ac(5, "2x2 oracle: verdict agrees with the partial-transpose sign test on 500 states")
def test_two_qubit_oracle():
    seen = set()
    for seed in range(500):
        rho = random_density((2, 2), derive_seed(5, seed))
        eps = 1e-9 * max(1.0, np.linalg.norm(rho.mat))
        pt = rho.mat.reshape(2, 2, 2, 2).transpose(2, 1, 0, 3).reshape(4, 4)
        ppt = np.linalg.eigvalsh(pt)[0] >= -eps
        conclusion = full_verdict(rho).conclusion
        assert conclusion == (SEPARABLE if ppt else ENTANGLED)
        seen.add(conclusion)
    assert seen == {SEPARABLE, ENTANGLED}


@ac(6, "eigensolver: char-poly roots to 1e-8 (dims 2-4), residual <= 1e-10 ||A|| up to dim 32")
def test_eigensolver_oracle():
    rng = np.random.default_rng(6)
    for i in range(100):
        n = 2 + i % 3
        g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        a = (g + g.conj().T) / 2
        np.testing.assert_allclose(linalg.hermitian_eigen(a).eigenvalues, hermitian_eigs_by_charpoly(a), rtol=0, atol=1e-8)
    for n in itertools.chain(range(2, 17), (20, 24, 28, 32)):
        g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        a = (g + g.conj().T) / 2
        r = linalg.hermitian_eigen(a)
        recon = r.eigenvectors @ np.diag(r.eigenvalues) @ r.eigenvectors.conj().T
        assert np.linalg.norm(recon - a) <= 1e-10 * np.linalg.norm(a)


@ac(7, "multipartite purity chain on 200 random (2,2,2) separable states")
def test_tripartite_chain():
    dims = (2, 2, 2)
    subsets = [s for r in (1, 2, 3) for s in itertools.combinations(range(3), r)]
    for seed in range(200):
        rho, _ = random_separable(dims, 1 + seed % 5, derive_seed(7, seed))
        assert purity_chain_check(rho).satisfied
        purity = {s: np.linalg.norm(brute_partial_trace(rho.mat, dims, list(s))) ** 2 for s in subsets}
        for s, t in itertools.product(subsets, repeat=2):
            if set(s) < set(t):
                assert purity[s] >= purity[t] - 1e-9


@ac(8, "N(mu) interval: contains 0, tight endpoints, matches 1e-3 grid scan; products give full range")
def test_n_mu_interval():
    for i in range(100):
        dims = [(2, 2), (2, 3), (3, 2), (3, 3)][i % 4]
        rho = random_density(dims, derive_seed(8, i))
        eps = 1e-9 * max(1.0, np.linalg.norm(rho.mat))
        iv = n_mu_interval(rho)
        assert iv.mu_min <= 0 <= iv.mu_max
        for end, hit in ((iv.mu_min, iv.bound_hit[0]), (iv.mu_max, iv.bound_hit[1])):
            if not hit:
                lo = np.linalg.eigvalsh(n_mu(rho, end))[0]
                assert -eps <= lo <= 10 * eps, (i, end, lo)
        g_lo, g_hi = grid_mu_interval(rho.mat, dims)
        assert abs(g_lo - iv.mu_min) <= 2e-3 and abs(g_hi - iv.mu_max) <= 2e-3
    for seed in range(5):
        a, b = random_density(2, derive_seed(80, seed)), random_density(3, derive_seed(81, seed))
        iv = n_mu_interval(DensityMatrix(np.kron(a.mat, b.mat), (2, 3)))
        assert (iv.mu_min, iv.mu_max, iv.bound_hit) == (-64.0, 64.0, (True, True))


@ac(9, "cross-Gram: ensemble sums reproduce k and s to 1e-9; product states dist <= 1e-10")
def test_cross_gram_ensemble_sums():
    for i in range(50):
        k = 1 + i % 4
        rho, ens = random_separable((2, 2), k, derive_seed(9, i))
        psis = [m[0].amplitudes for m in ens.members]
        phis = [m[1].amplitudes for m in ens.members]
        k_sum, s_sum = ensemble_cross_sums(ens.weights, psis, phis)
        rep = cross_gram_diagnostic(rho)
        assert np.max(np.abs(rep.k - k_sum)) <= 1e-9
        assert np.max(np.abs(rep.s - s_sum)) <= 1e-9
        if k == 1:
            assert rep.dist_full <= 1e-10


@ac(10, "determinism: repeated check runs are byte-identical in JSON mode")
def test_check_is_deterministic(tmp_path):
    files = []
    for name, rho in (("rho", spectra_twins()[0]), ("rand", random_density((2, 3), 10)), ("sep", random_separable((2, 4), 3, 11)[0])):
        path = tmp_path / f"{name}.json"
        write_state(path, rho, name)
        files.append(path)
    for path in files:
        argv = [sys.executable, "-m", "separability", "check", str(path), "--format", "json", "--seed", "17", "--samples", "128"]
        runs = [subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(3)]
        assert runs[0] and runs[0] == runs[1] == runs[2]
