"""Density matrices, pure states, named states and seeded random generators."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg
from .errors import DimensionError, InvalidStateError
from .rng import SplitMix64

TRACE_TOL = 1e-9
NORM_TOL = 1e-9
WEIGHT_TOL = 1e-12


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class PureState:
    """A normalized state vector on a (possibly multipartite) space."""

    dims: tuple[int, ...]
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        dims = linalg.check_dims(self.dims, amps.size)
        if not np.all(np.isfinite(amps)):
            raise InvalidStateError("amplitudes must be finite")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > NORM_TOL:
            raise InvalidStateError(f"state vector norm {norm!r} differs from 1 by more than {NORM_TOL}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", _frozen(amps))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite matrix with a subsystem signature.

    Construction validates every invariant and raises :class:`InvalidStateError`
    naming the one that failed. Nothing is renormalized.
    """

    mat: np.ndarray
    dims: tuple[int, ...]
    tol: float = field(default=None, repr=False)

    def __post_init__(self):
        m = np.asarray(self.mat, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidStateError(f"density matrix must be square, got shape {m.shape}")
        try:
            dims = linalg.check_dims(self.dims, m.shape[0])
        except DimensionError as exc:
            raise InvalidStateError(str(exc)) from None
        if not np.all(np.isfinite(m)):
            raise InvalidStateError("matrix entries must be finite")
        tol = linalg.default_tol(m) if self.tol is None else float(self.tol)
        defect = linalg.hermiticity_defect(m)
        if defect > tol:
            raise InvalidStateError(f"not Hermitian: max |a - a^dagger| = {defect:.3e} > {tol:.3e}")
        m = 0.5 * (m + m.conj().T)
        tr = float(np.trace(m).real)
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvalidStateError(f"trace {tr!r} differs from 1 by more than {TRACE_TOL}")
        lo = linalg.min_eigenvalue(m)
        if lo < -tol:
            raise InvalidStateError(f"not positive semidefinite: min eigenvalue {lo:.3e} < -{tol:.3e}")
        object.__setattr__(self, "mat", _frozen(m))
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "tol", tol)

    @property
    def side(self) -> int:
        return self.mat.shape[0]

    def reduced(self, keep) -> np.ndarray:
        return linalg.partial_trace(self.mat, self.dims, keep)

    def permuted(self, order: Sequence[int]) -> "DensityMatrix":
        """The same state with tensor factors reordered."""
        dims = tuple(self.dims[o] for o in order)
        return DensityMatrix(linalg.permute_subsystems(self.mat, self.dims, order), dims)


@dataclass(frozen=True, eq=False)
class SeparableEnsemble:
    """Weights ``p_i`` and, per term, one pure state for each subsystem."""

    dims: tuple[int, ...]
    weights: np.ndarray
    members: tuple[tuple[PureState, ...], ...]

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        if w.ndim != 1 or len(w) != len(self.members) or len(w) == 0:
            raise InvalidStateError("need one weight per ensemble member")
        if np.any(w <= 0):
            raise InvalidStateError("ensemble weights must be positive")
        if abs(w.sum() - 1.0) > WEIGHT_TOL:
            raise InvalidStateError(f"ensemble weights sum to {w.sum()!r}, not 1")
        for member in self.members:
            if tuple(p.dims[0] for p in member) != tuple(self.dims) or any(len(p.dims) != 1 for p in member):
                raise InvalidStateError("each member needs one pure state per subsystem")
        object.__setattr__(self, "weights", w)

    def assemble(self) -> np.ndarray:
        total = np.zeros((int(np.prod(self.dims)),) * 2, dtype=np.complex128)
        for p, member in zip(self.weights, self.members):
            term = np.ones((1, 1), dtype=np.complex128)
            for psi in member:
                term = np.kron(term, np.outer(psi.amplitudes, psi.amplitudes.conj()))
            total += p * term
        return total


def basis_state(dims: Sequence[int], *digits: int) -> PureState:
    dims = tuple(dims)
    amps = np.zeros(int(np.prod(dims)), dtype=np.complex128)
    amps[np.ravel_multi_index(digits, dims)] = 1.0
    return PureState(dims, amps)


def projector(psi: PureState) -> DensityMatrix:
    a = psi.amplitudes
    return DensityMatrix(np.outer(a, a.conj()), psi.dims)


def mix(weights: Sequence[float], states: Sequence[DensityMatrix]) -> DensityMatrix:
    weights = [float(w) for w in weights]
    if len(weights) != len(states) or not states:
        raise InvalidStateError("weights and states must have equal, nonzero length")
    if any(w <= 0 for w in weights):
        raise InvalidStateError("mixture weights must be positive")
    if abs(sum(weights) - 1.0) > WEIGHT_TOL:
        raise InvalidStateError(f"mixture weights sum to {sum(weights)!r}, not 1")
    dims = states[0].dims
    if any(s.dims != dims for s in states):
        raise InvalidStateError("all mixed states must share dims")
    return DensityMatrix(sum(w * s.mat for w, s in zip(weights, states)), dims)


_R2 = 1.0 / np.sqrt(2.0)
_BELL = {
    "phi+": (_R2, 0.0, 0.0, _R2),
    "phi-": (_R2, 0.0, 0.0, -_R2),
    "psi+": (0.0, _R2, _R2, 0.0),
    "psi-": (0.0, _R2, -_R2, 0.0),
}


def bell_state(kind: str) -> PureState:
    """One of ``"phi+"``, ``"phi-"``, ``"psi+"``, ``"psi-"``."""
    try:
        return PureState((2, 2), np.array(_BELL[kind], dtype=np.complex128))
    except KeyError:
        raise ValueError(f"unknown Bell state {kind!r}; expected one of {sorted(_BELL)}") from None


def spectra_twins() -> tuple[DensityMatrix, DensityMatrix]:
    """Two-qubit pair with identical global and local spectra.

    ``rho = |00><00|/3 + 2|psi+><psi+|/3`` is entangled while
    ``sigma = 2|00><00|/3 + |11><11|/3`` is separable.
    """
    p00 = projector(basis_state((2, 2), 0, 0))
    p11 = projector(basis_state((2, 2), 1, 1))
    rho = mix((1 / 3, 2 / 3), (p00, projector(bell_state("psi+"))))
    sigma = mix((2 / 3, 1 / 3), (p00, p11))
    return rho, sigma


def phi_mixture(lam: float) -> DensityMatrix:
    """``lam |phi+><phi+| + (1 - lam) |phi-><phi-|``; separable only at ``lam = 1/2``."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    a, b = bell_state("phi+").amplitudes, bell_state("phi-").amplitudes
    return DensityMatrix(lam * np.outer(a, a.conj()) + (1 - lam) * np.outer(b, b.conj()), (2, 2))


def _haar_vector(stream: SplitMix64, dim: int) -> np.ndarray:
    z = stream.complex_normal(dim)
    return z / np.linalg.norm(z)


def random_pure(dim: int, seed: int) -> PureState:
    """Haar-random unit vector: normalized i.i.d. complex Gaussians."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    return PureState((dim,), _haar_vector(SplitMix64(seed), dim))


def random_separable(dims: Sequence[int], k: int, seed: int) -> tuple[DensityMatrix, SeparableEnsemble]:
    """Mixture of ``k`` random product pure states with flat-Dirichlet weights.

    Stream order: ``k`` exponentials for the weights, then for each term the
    Haar factors of subsystems 0, 1, ... in turn.
    """
    dims = linalg.check_dims(dims)
    if k < 1:
        raise ValueError("k must be >= 1")
    stream = SplitMix64(seed)
    e = stream.exponential(k)
    weights = e / e.sum()
    members = tuple(tuple(PureState((d,), _haar_vector(stream, d)) for d in dims) for _ in range(k))
    ens = SeparableEnsemble(dims, weights, members)
    return DensityMatrix(ens.assemble(), dims), ens


def random_density(dims, seed: int) -> DensityMatrix:
    """Ginibre state ``G G^dagger / tr(G G^dagger)``; ``dims`` may be an int."""
    dims = (dims,) if np.isscalar(dims) else tuple(dims)
    n = int(np.prod(linalg.check_dims(dims)))
    g = SplitMix64(seed).complex_normal(n * n).reshape(n, n)
    w = g @ g.conj().T
    return DensityMatrix(w / np.trace(w).real, dims)
