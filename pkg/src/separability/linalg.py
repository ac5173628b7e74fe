"""Dense complex matrix kernel.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Multipartite
operators use the convention that subsystem 0 is the leftmost (slowest
varying) Kronecker factor, so a basis index ``i`` on dims ``(d0, d1, ...)``
unpacks as ``np.unravel_index(i, dims)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionError, NumericalError

HERMITIAN_RTOL = 1e-9
PSD_RTOL = 1e-9
JACOBI_RTOL = 1e-12
MAX_SWEEPS = 100


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionError(f"expected a 2-d matrix, got shape {m.shape}")
    return m


def _square(a) -> np.ndarray:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    return m


def frobenius(a) -> float:
    return float(np.linalg.norm(np.asarray(a)))


def default_tol(a, base: float = PSD_RTOL) -> float:
    """Scale-relative tolerance ``base * max(1, ||a||_F)``."""
    return base * max(1.0, frobenius(a))


def check_dims(dims: Sequence[int], side: int | None = None) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if not dims:
        raise DimensionError("dims must be nonempty")
    if any(d < 1 for d in dims):
        raise DimensionError(f"every subsystem dimension must be >= 1, got {dims}")
    if side is not None and int(np.prod(dims)) != side:
        raise DimensionError(f"dims {dims} do not multiply to matrix side {side}")
    return dims


def mat_mul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T


def trace(a) -> complex:
    return complex(np.trace(_square(a)))


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def purity(a) -> float:
    """``tr(a^2)`` of a Hermitian matrix, as its squared Frobenius norm."""
    m = _square(a)
    return float(np.vdot(m, m).real)


def partial_trace(a, dims: Sequence[int], keep) -> np.ndarray:
    """Trace out every subsystem not in ``keep``.

    Kept subsystems appear in ascending index order in the result.
    """
    m = _square(a)
    dims = check_dims(dims, m.shape[0])
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise DimensionError("keep must name at least one subsystem")
    if keep[0] < 0 or keep[-1] >= len(dims):
        raise DimensionError(f"subsystem index out of range for dims {dims}: {keep}")
    n = len(dims)
    drop = [i for i in range(n) if i not in keep]
    dk = int(np.prod([dims[i] for i in keep]))
    dd = int(np.prod([dims[i] for i in drop])) if drop else 1
    t = m.reshape(dims + dims)
    t = t.transpose(keep + drop + [n + i for i in keep] + [n + i for i in drop])
    t = t.reshape(dk, dd, dk, dd)
    return np.einsum("itjt->ij", t)


def partial_transpose(a, dims: Sequence[int], subsystem: int) -> np.ndarray:
    m = _square(a)
    dims = check_dims(dims, m.shape[0])
    n = len(dims)
    if not 0 <= subsystem < n:
        raise DimensionError(f"subsystem {subsystem} out of range for dims {dims}")
    axes = list(range(2 * n))
    axes[subsystem], axes[n + subsystem] = axes[n + subsystem], axes[subsystem]
    return m.reshape(dims + dims).transpose(axes).reshape(m.shape).copy()


def permute_subsystems(a, dims: Sequence[int], order: Sequence[int]) -> np.ndarray:
    """Reorder tensor factors: output factor ``j`` is input factor ``order[j]``."""
    m = _square(a)
    dims = check_dims(dims, m.shape[0])
    n = len(dims)
    order = [int(o) for o in order]
    if sorted(order) != list(range(n)):
        raise DimensionError(f"{order} is not a permutation of {n} subsystems")
    t = m.reshape(dims + dims).transpose(order + [n + o for o in order])
    return t.reshape(m.shape).copy()


def hermiticity_defect(a) -> float:
    """Largest entrywise deviation ``max |a - a^dagger|``; batched over leading axes."""
    a = np.asarray(a)
    return float(np.max(np.abs(a - np.swapaxes(a, -1, -2).conj()), initial=0.0))


def hermitize(a, tol: float | None = None) -> np.ndarray:
    """Return ``(a + a^dagger)/2``, refusing inputs that are not Hermitian within ``tol``.

    ``tol`` defaults to ``1e-9 * max(1, ||a||_F)``.
    """
    a = np.asarray(a, dtype=np.complex128)
    if tol is None:
        tol = HERMITIAN_RTOL * max(1.0, float(np.max(np.linalg.norm(a, axis=(-2, -1)), initial=0.0)))
    defect = hermiticity_defect(a)
    if defect > tol:
        raise ValueError(f"matrix is not Hermitian: defect {defect:.3e} exceeds {tol:.3e}")
    return 0.5 * (a + np.swapaxes(a, -1, -2).conj())


@dataclass(frozen=True)
class HermitianEigenResult:
    eigenvalues: np.ndarray  # ascending
    eigenvectors: np.ndarray  # columns
    residual: float
    sweeps: int


def _jacobi(a: np.ndarray, want_vectors: bool = True):
    """Cyclic complex Jacobi on a stack of Hermitian matrices, shape ``(B, n, n)``.

    Every matrix in the stack is rotated together; a stack is done once each
    member's off-diagonal Frobenius norm is below ``1e-12 * max(1, ||a||_F)``.
    """
    a = np.array(a, dtype=np.complex128, copy=True)
    n = a.shape[-1]
    v = np.broadcast_to(np.eye(n, dtype=np.complex128), a.shape).copy() if want_vectors else None
    thresh = JACOBI_RTOL * np.maximum(1.0, np.linalg.norm(a, axis=(1, 2)))
    offmask = ~np.eye(n, dtype=bool)
    for sweep in range(MAX_SWEEPS + 1):
        off = np.sqrt(np.sum(np.abs(a[:, offmask]) ** 2, axis=1))
        if np.all(off < thresh):
            break
        if sweep == MAX_SWEEPS:
            raise NumericalError(f"Jacobi eigensolver did not converge in {MAX_SWEEPS} sweeps")
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[:, p, q]
                mag = np.abs(apq)
                live = mag > 1e-300
                if not live.any():
                    continue
                safe = np.where(live, mag, 1.0)
                phase = np.where(live, apq / safe, 1.0)
                tau = (a[:, q, q].real - a[:, p, p].real) / (2.0 * safe)
                t = np.where(tau >= 0.0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
                t = np.where(live, t, 0.0)
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                ph = phase.conj()  # J = [[c, s], [-s*ph, c*ph]] on (p, q)
                cs, sph, cph = c[:, None], (s * ph)[:, None], (c * ph)[:, None]
                colp, colq = a[:, :, p].copy(), a[:, :, q].copy()
                a[:, :, p] = cs * colp - sph * colq
                a[:, :, q] = s[:, None] * colp + cph * colq
                rowp, rowq = a[:, p, :].copy(), a[:, q, :].copy()
                a[:, p, :] = cs * rowp - sph.conj() * rowq
                a[:, q, :] = s[:, None] * rowp + cph.conj() * rowq
                a[:, p, q] = 0.0
                a[:, q, p] = 0.0
                a[:, p, p] = a[:, p, p].real
                a[:, q, q] = a[:, q, q].real
                if want_vectors:
                    vp, vq = v[:, :, p].copy(), v[:, :, q].copy()
                    v[:, :, p] = cs * vp - sph * vq
                    v[:, :, q] = s[:, None] * vp + cph * vq
    w = np.diagonal(a, axis1=1, axis2=2).real.copy()
    order = np.argsort(w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1)
    if want_vectors:
        v = np.take_along_axis(v, order[:, None, :], axis=2)
    return w, v, sweep


def hermitian_eigen(a, tol: float | None = None) -> HermitianEigenResult:
    """Full eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Raises ``ValueError`` if ``a`` is not Hermitian within ``tol`` (default
    ``1e-9 * ||a||_F``) and :class:`NumericalError` after 100 sweeps without
    convergence.
    """
    m = _square(a)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    h = hermitize(m, tol)
    w, v, sweeps = _jacobi(h[None])
    w, v = w[0], v[0]
    residual = frobenius(h @ v - v * w[None, :])
    return HermitianEigenResult(eigenvalues=w, eigenvectors=v, residual=residual, sweeps=sweeps)


def eigvalsh(a, tol: float | None = None) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix or a stack ``(..., n, n)``."""
    a = np.asarray(a, dtype=np.complex128)
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    h = hermitize(a, tol)
    lead = h.shape[:-2]
    n = h.shape[-1]
    w, _, _ = _jacobi(h.reshape(-1, n, n), want_vectors=False)
    return w.reshape(lead + (n,))


def min_eigenvalue(a, tol: float | None = None):
    """Smallest eigenvalue, per matrix for a stack."""
    w = eigvalsh(a, tol)
    return w[..., 0] if w.ndim > 1 else float(w[0])


def is_psd(a, tol: float | None = None) -> tuple[bool, float]:
    """``(min_eig >= -tol, min_eig)`` with ``tol`` defaulting to ``1e-9 * max(1, ||a||_F)``."""
    m = _square(a)
    if tol is None:
        tol = default_tol(m)
    lo = min_eigenvalue(m)
    return lo >= -tol, lo
