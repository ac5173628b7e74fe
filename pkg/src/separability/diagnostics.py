"""Exploratory quantities with no pass/fail rule attached.

* Purification of ``rho_AB`` through its spectral decomposition, and the
  comparison of ``tr_C(rho_AC rho_BC)`` with ``rho_AB^2``.
* The family ``N(mu) = (1 + mu) rho_A (x) rho_B - mu rho_AB`` and the
  interval of ``mu`` around 0 on which it stays a state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimensionError
from .states import DensityMatrix, PureState


@dataclass(frozen=True, eq=False)
class Purification:
    dims: tuple[int, int, int]  # (dA, dB, dC)
    state: PureState
    kept_rank: int

    def tensor(self) -> np.ndarray:
        return self.state.amplitudes.reshape(self.dims)


def _bipartite_view(rho: DensityMatrix, bipartition) -> tuple[np.ndarray, int, int]:
    n = len(rho.dims)
    if bipartition is None:
        if n != 2:
            raise DimensionError("bipartite required for diagnostics")
        bipartition = ((0,), (1,))
    a_part, b_part = (tuple(int(i) for i in part) for part in bipartition)
    if not a_part or not b_part or sorted(a_part + b_part) != list(range(n)):
        raise DimensionError(f"bipartition {bipartition} must split subsystems 0..{n - 1} into two nonempty groups")
    order = list(a_part + b_part)
    mat = linalg.permute_subsystems(rho.mat, rho.dims, order) if order != list(range(n)) else rho.mat
    da = int(np.prod([rho.dims[i] for i in a_part]))
    return mat, da, rho.side // da


def purification_from_basis(eigenvalues, eigenvectors, da: int, db: int, tol: float) -> Purification:
    """Assemble ``sum_i sqrt(lam_i) |i_AB>|i_C>`` from a given eigenbasis.

    Eigenpairs with ``lam_i <= tol`` are dropped; the rest are ordered by
    descending eigenvalue.
    """
    w = np.asarray(eigenvalues, dtype=np.float64)
    v = np.asarray(eigenvectors, dtype=np.complex128)
    order = np.argsort(-w, kind="stable")
    order = order[w[order] > tol]
    rank = len(order)
    amps = v[:, order] * np.sqrt(w[order])[None, :]  # rows: AB index, cols: C index
    return Purification((da, db, rank), PureState((da, db, rank), amps.reshape(-1)), rank)


def purify(rho: DensityMatrix, bipartition=None) -> Purification:
    """Purify ``rho`` with a register ``C`` of dimension ``rank(rho)``.

    ``bipartition`` is ``(A_subsystems, B_subsystems)``; it defaults to
    ``((0,), (1,))`` for a bipartite state.
    """
    mat, da, db = _bipartite_view(rho, bipartition)
    eig = linalg.hermitian_eigen(mat)
    return purification_from_basis(eig.eigenvalues, eig.eigenvectors, da, db, linalg.default_tol(mat))


@dataclass(frozen=True, eq=False)
class CrossGramReport:
    k: np.ndarray  # tr_C(rho_AC rho_BC) on the AB space
    s: np.ndarray  # rho_AB^2
    dist_full: float
    dist_traced_A: float
    dist_traced_B: float

    def to_dict(self) -> dict:
        return {
            "dist_full": self.dist_full,
            "dist_traced_A": self.dist_traced_A,
            "dist_traced_B": self.dist_traced_B,
        }


def reduced_ac_bc(p: Purification) -> tuple[np.ndarray, np.ndarray]:
    """``rho_AC`` and ``rho_BC`` of the purified state, as ``(dA dC)`` and ``(dB dC)`` matrices."""
    t = p.tensor()
    da, db, dc = p.dims
    rho_ac = np.einsum("abc,Abe->acAe", t, t.conj()).reshape(da * dc, da * dc)
    rho_bc = np.einsum("abc,aBe->bcBe", t, t.conj()).reshape(db * dc, db * dc)
    return rho_ac, rho_bc


def cross_gram(p: Purification) -> CrossGramReport:
    da, db, dc = p.dims
    rho_ac, rho_bc = reduced_ac_bc(p)
    ac = rho_ac.reshape(da, dc, da, dc)
    bc = rho_bc.reshape(db, dc, db, dc)
    # tr_C[(rho_AC (x) I_B)(I_A (x) rho_BC)] with C contracted cyclically
    k = np.einsum("acAe,beBc->abAB", ac, bc).reshape(da * db, da * db)
    t = p.tensor().reshape(da * db, dc)
    rho = t @ t.conj().T
    s = rho @ rho
    diff = k - s
    return CrossGramReport(
        k=k,
        s=s,
        dist_full=linalg.frobenius(diff),
        dist_traced_A=linalg.frobenius(linalg.partial_trace(diff, (da, db), [1])),
        dist_traced_B=linalg.frobenius(linalg.partial_trace(diff, (da, db), [0])),
    )


def cross_gram_diagnostic(rho: DensityMatrix, bipartition=None) -> CrossGramReport:
    """Compare ``tr_C(rho_AC rho_BC)`` with ``rho_AB^2`` through a purification.

    For a separable state whose product decomposition has as many terms as
    ``rank(rho)``, ``k`` equals the ensemble sum
    ``sum p_j p_j' <psi_j|psi_j'><phi_j'|phi_j> |psi_j><psi_j'| (x) |phi_j'><phi_j|``,
    which differs from ``rho^2`` only by the exchange ``j <-> j'`` on B.

    Tracing out either party removes the difference entirely:
    ``tr_A k = sum_c lam_c^2 tr_A |c><c| = tr_A rho^2`` for any state, so
    ``dist_traced_A`` and ``dist_traced_B`` are zero up to roundoff.
    """
    return cross_gram(purify(rho, bipartition))


def _need_bipartite(rho: DensityMatrix):
    if len(rho.dims) != 2:
        raise DimensionError("bipartite required for diagnostics")


def n_mu(rho: DensityMatrix, mu: float) -> np.ndarray:
    _need_bipartite(rho)
    product = np.kron(rho.reduced([0]), rho.reduced([1]))
    return (1.0 + mu) * product - mu * rho.mat


@dataclass(frozen=True)
class MuInterval:
    mu_min: float
    mu_max: float
    bound_hit: tuple[bool, bool]  # (lower, upper)

    def to_dict(self) -> dict:
        return {"mu_min": self.mu_min, "mu_max": self.mu_max, "bound_hit": list(self.bound_hit)}


def n_mu_interval(rho: DensityMatrix, search_bound: float = 64.0, tol: float = 1e-6, eps: float | None = None) -> MuInterval:
    """Largest interval around 0 on which ``N(mu)`` is positive semidefinite within ``eps``.

    ``min_eig(N(mu))`` is concave in ``mu``, so the feasible set is an
    interval containing 0. Each endpoint is bisected from 0 until the bracket
    is narrower than ``tol`` and the feasible end sits within ``10 eps`` of
    the PSD boundary (or the bracket stops shrinking).
    """
    _need_bipartite(rho)
    eps = rho.tol if eps is None else eps
    product = np.kron(rho.reduced([0]), rho.reduced([1]))
    delta = product - rho.mat

    def lo_eig(mu: float) -> float:
        return linalg.min_eigenvalue(product + mu * delta)

    def edge(sign: float) -> tuple[float, bool]:
        far = sign * search_bound
        if lo_eig(far) >= -eps:
            return far, True
        good, bad = 0.0, far
        good_val = lo_eig(good)
        for _ in range(400):
            if abs(bad - good) <= tol and good_val <= 10 * eps:
                break
            mid = 0.5 * (good + bad)
            if mid in (good, bad):
                break
            val = lo_eig(mid)
            if val >= -eps:
                good, good_val = mid, val
            else:
                bad = mid
        return good, False

    lo, lo_hit = edge(-1.0)
    hi, hi_hit = edge(1.0)
    return MuInterval(lo, hi, (lo_hit, hi_hit))

