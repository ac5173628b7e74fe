"""Necessary separability criteria and the aggregate verdict.

Every check returns a :class:`CriterionReport` whose ``margin`` is the
smallest slack observed (negative means violated). A report is a violation
only when ``margin < -tol``; a violation certifies entanglement.

The qubit-block checks (``upsilon_R``, ``theorem2_check``, the two
``theorem3`` checks) work on states whose first subsystem is a qubit and
write them as ``I (x) M0 + sx (x) Mx + sy (x) My + sz (x) Mz``.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import linalg
from .errors import DimensionError
from .rng import SplitMix64, derive_seed
from .states import DensityMatrix

MAX_CHAIN_SUBSYSTEMS = 8
ADMISSIBLE_TOL = 1e-12

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PERES_R = np.diag([1.0, -1.0, 1.0])

ENTANGLED = "entangled"
SEPARABLE = "separable"
INCONCLUSIVE = "inconclusive"


@dataclass
class CriterionReport:
    criterion: str
    satisfied: bool
    margin: float
    tol: float
    witness: Any = None
    note: str | None = None

    def to_dict(self) -> dict:
        d = {
            "criterion": self.criterion,
            "satisfied": self.satisfied,
            "margin": self.margin,
            "tol": self.tol,
            "witness": self.witness,
        }
        if self.note:
            d["note"] = self.note
        return d


def _report(name, margin, tol, witness=None, note=None) -> CriterionReport:
    margin = float(margin)
    return CriterionReport(name, margin >= -tol, margin, float(tol), witness, note)


def _tol_for(rho: DensityMatrix, tol: float | None) -> float:
    return rho.tol if tol is None else float(tol)


@dataclass(frozen=True, eq=False)
class PauliBlocks:
    n: int
    m0: np.ndarray
    mx: np.ndarray
    my: np.ndarray
    mz: np.ndarray

    @property
    def vector(self) -> np.ndarray:
        """``(Mx, My, Mz)`` stacked, shape ``(3, n, n)``."""
        return np.stack([self.mx, self.my, self.mz])


def _qubit_first(rho: DensityMatrix) -> int:
    if rho.dims[0] != 2:
        raise DimensionError(f"first subsystem must be a qubit, got dims {rho.dims}")
    return rho.side // 2


def _blocks_of(mat: np.ndarray) -> PauliBlocks:
    n = mat.shape[0] // 2
    r00, r01 = mat[:n, :n], mat[:n, n:]
    r10, r11 = mat[n:, :n], mat[n:, n:]
    return PauliBlocks(
        n,
        0.5 * (r00 + r11),
        0.5 * (r01 + r10),
        0.5j * (r01 - r10),
        0.5 * (r00 - r11),
    )


def pauli_blocks(rho: DensityMatrix) -> PauliBlocks:
    _qubit_first(rho)
    return _blocks_of(rho.mat)


def blocks_to_state(blocks: PauliBlocks) -> np.ndarray:
    n = blocks.n
    out = np.empty((2 * n, 2 * n), dtype=np.complex128)
    out[:n, :n] = blocks.m0 + blocks.mz
    out[:n, n:] = blocks.mx - 1j * blocks.my
    out[n:, :n] = blocks.mx + 1j * blocks.my
    out[n:, n:] = blocks.m0 - blocks.mz
    return out


def is_admissible(r, tol: float = ADMISSIBLE_TOL) -> bool:
    """True when every singular value of the real 3x3 ``r`` is at most ``1 + tol``."""
    r = np.asarray(r, dtype=np.float64)
    if r.shape != (3, 3):
        raise DimensionError(f"R must be 3x3, got {r.shape}")
    return bool(np.linalg.svd(r, compute_uv=False)[0] <= 1.0 + tol)


def _upsilon_stack(mat: np.ndarray, rs: np.ndarray) -> np.ndarray:
    # Written as rho plus the block change from (R - I), so R = I is bit-exact.
    blocks = _blocks_of(mat)
    vec = blocks.vector
    deltas = np.einsum("kij,jab->kiab", rs - np.eye(3), vec)
    n = blocks.n
    out = np.broadcast_to(mat, (len(rs),) + mat.shape).copy()
    dx, dy, dz = deltas[:, 0], deltas[:, 1], deltas[:, 2]
    out[:, :n, :n] += dz
    out[:, :n, n:] += dx - 1j * dy
    out[:, n:, :n] += dx + 1j * dy
    out[:, n:, n:] -= dz
    return out


def upsilon_R(rho: DensityMatrix, r) -> np.ndarray:
    """Replace the Bloch-side blocks ``(Mx, My, Mz)`` by ``R (Mx, My, Mz)``.

    ``R = diag(1, -1, 1)`` is the partial transpose on the qubit. Admissibility
    of ``R`` is not checked here.
    """
    _qubit_first(rho)
    r = np.asarray(r, dtype=np.float64)
    if r.shape != (3, 3):
        raise DimensionError(f"R must be 3x3, got {r.shape}")
    return _upsilon_stack(rho.mat, r[None])[0]


def sign_battery() -> np.ndarray:
    """The eight ``diag(+-1, +-1, +-1)``; includes ``I``, ``-I`` and the Peres member."""
    return np.array([np.diag(s) for s in itertools.product((1.0, -1.0), repeat=3)])


def random_contraction(seed: int) -> np.ndarray:
    """``O1 diag(s) O2^T`` with Haar rotations and ``s_i`` uniform on [0, 1]."""
    stream = SplitMix64(seed)
    o1 = stream.rotation()
    o2 = stream.rotation()
    s = stream.uniform(3)
    return o1 @ np.diag(s) @ o2.T


@functools.lru_cache(maxsize=16)
def _r_battery(n_samples: int, seed: int) -> np.ndarray:
    rs = [random_contraction(derive_seed(seed, i)) for i in range(n_samples)]
    out = np.concatenate([sign_battery(), np.array(rs).reshape(-1, 3, 3)])
    out.flags.writeable = False
    return out


def r_battery(n_samples: int = 512, seed: int = 0) -> np.ndarray:
    """Sign patterns followed by ``n_samples`` random admissible contractions."""
    return _r_battery(int(n_samples), int(seed))


def theorem2_check(rho: DensityMatrix, n_samples: int = 512, seed: int = 0, tol: float | None = None) -> CriterionReport:
    """Positivity of ``upsilon_R(rho)`` over a battery of admissible ``R``.

    Sound but incomplete: any negative eigenvalue found is a real
    certificate; the search over ``R`` is a fixed sample.
    """
    _qubit_first(rho)
    tol = _tol_for(rho, tol)
    rs = r_battery(n_samples, seed)
    mins = linalg.min_eigenvalue(_upsilon_stack(rho.mat, rs))
    worst = int(np.argmin(mins))
    return _report("theorem2", mins[worst], tol, {"R": rs[worst].tolist(), "index": worst})


def fibonacci_sphere(n: int) -> np.ndarray:
    """``n`` near-uniform unit vectors on the sphere (golden-angle spiral)."""
    i = np.arange(n)
    z = 1.0 - (2.0 * i + 1.0) / n
    r = np.sqrt(1.0 - z * z)
    phi = i * np.pi * (3.0 - np.sqrt(5.0))
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


def sphere_directions(n_dirs: int = 512) -> np.ndarray:
    axes = np.array([[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]], dtype=np.float64)
    return np.concatenate([axes, fibonacci_sphere(n_dirs)]) if n_dirs else axes


def theorem3_sphere_check(rho: DensityMatrix, n_dirs: int = 512, tol: float | None = None) -> CriterionReport:
    """Positivity of ``M0 - r.M`` over unit directions ``r``.

    Unit directions suffice: ``M0 >= 0`` for any state, and for ``|r| <= 1``
    the operator is a convex combination of ``M0`` and a unit-direction one.
    """
    blocks = pauli_blocks(rho)
    tol = _tol_for(rho, tol)
    dirs = sphere_directions(n_dirs)
    ops = blocks.m0[None] - np.einsum("kj,jab->kab", dirs, blocks.vector)
    mins = linalg.min_eigenvalue(ops)
    worst = int(np.argmin(mins))
    return _report("theorem3_sphere", mins[worst], tol, {"direction": dirs[worst].tolist()})


def theorem3_trace_check(rho: DensityMatrix, tol: float | None = None) -> CriterionReport:
    """``tr(M0^2 - Mx^2 - My^2 - Mz^2) >= 0``."""
    b = pauli_blocks(rho)
    tol = _tol_for(rho, tol)
    margin = linalg.purity(b.m0) - linalg.purity(b.mx) - linalg.purity(b.my) - linalg.purity(b.mz)
    return _report("theorem3_trace", margin, tol)


def _need_multipartite(rho: DensityMatrix):
    if len(rho.dims) < 2:
        raise DimensionError("at least 2 subsystems required")


def purity_chain_check(rho: DensityMatrix, tol: float | None = None) -> CriterionReport:
    """``tr rho_S^2 >= tr rho_T^2`` for every nested pair of nonempty subsystem sets ``S < T``."""
    _need_multipartite(rho)
    n = len(rho.dims)
    if n > MAX_CHAIN_SUBSYSTEMS:
        raise DimensionError(f"purity chain supports at most {MAX_CHAIN_SUBSYSTEMS} subsystems")
    tol = _tol_for(rho, tol)
    full = (1 << n) - 1
    pur = {}
    for mask in range(1, full + 1):
        keep = [i for i in range(n) if mask >> i & 1]
        pur[mask] = linalg.purity(rho.mat) if mask == full else linalg.purity(rho.reduced(keep))
    best, pair = np.inf, None
    for t in range(1, full + 1):
        s = (t - 1) & t
        while s:
            slack = pur[s] - pur[t]
            if slack < best:
                best, pair = slack, (s, t)
            s = (s - 1) & t
    members = lambda m: [i for i in range(n) if m >> i & 1]  # noqa: E731
    return _report("purity_chain", best, tol, {"subset": members(pair[0]), "superset": members(pair[1])})


def ppt_check(rho: DensityMatrix, subsystem: int = 0, tol: float | None = None) -> CriterionReport:
    _need_multipartite(rho)
    tol = _tol_for(rho, tol)
    lo = linalg.min_eigenvalue(linalg.partial_transpose(rho.mat, rho.dims, subsystem))
    return _report(f"ppt[{subsystem}]", lo, tol, {"subsystem": subsystem, "min_eigenvalue": lo})


def majorization_slack(whole, part) -> tuple[float, int]:
    """Minimum over ``k`` of ``sum(part[:k]) - sum(whole[:k])`` on descending spectra.

    The shorter spectrum is zero-padded. Returns the slack and the 1-based ``k``.
    """
    whole = np.sort(np.asarray(whole, dtype=np.float64))[::-1]
    part = np.sort(np.asarray(part, dtype=np.float64))[::-1]
    size = max(len(whole), len(part))
    whole = np.pad(whole, (0, size - len(whole)))
    part = np.pad(part, (0, size - len(part)))
    slack = np.cumsum(part) - np.cumsum(whole)
    k = int(np.argmin(slack))
    return float(slack[k]), k + 1


def majorization_check(rho: DensityMatrix, tol: float | None = None) -> CriterionReport:
    """Spectrum of the whole majorized by the spectrum of each part."""
    if len(rho.dims) != 2:
        raise DimensionError("majorization check needs exactly 2 subsystems")
    tol = _tol_for(rho, tol)
    whole = linalg.eigvalsh(rho.mat)
    best, witness = np.inf, None
    for side in (0, 1):
        slack, k = majorization_slack(whole, linalg.eigvalsh(rho.reduced([side])))
        if slack < best:
            best, witness = slack, {"subsystem": side, "k": k}
    return _report("majorization", best, tol, witness)


@dataclass
class CheckConfig:
    tol: float = 1e-9
    samples: int = 512
    dirs: int = 512
    seed: int = 0

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.samples < 1 or self.dirs < 1:
            raise ValueError("samples and dirs must be >= 1")


@dataclass
class Verdict:
    conclusion: str
    certificates: list[CriterionReport]
    reports: list[CriterionReport] = field(default_factory=list)
    dims: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "conclusion": self.conclusion,
            "dims": list(self.dims),
            "certificates": [r.criterion for r in self.certificates],
            "criteria": [r.to_dict() for r in self.reports],
        }


PPT_SUFFICIENT_DIMS = {(2, 2), (2, 3), (3, 2)}


def full_verdict(rho: DensityMatrix, config: CheckConfig | None = None) -> Verdict:
    """Run every applicable criterion.

    Entangled if any criterion is violated. Separable only for qubit-qubit and
    qubit-qutrit states (either order) with positive partial transpose. Otherwise inconclusive.
    """
    config = config or CheckConfig()
    _need_multipartite(rho)
    tol = config.tol * max(1.0, linalg.frobenius(rho.mat))
    reports = [purity_chain_check(rho, tol)]
    bipartite = len(rho.dims) == 2
    if bipartite:
        reports.append(majorization_check(rho, tol))
    ppt = [ppt_check(rho, s, tol) for s in range(len(rho.dims))]
    reports.extend(ppt)
    if bipartite and 2 in rho.dims:
        qrho, note = rho, None
        if rho.dims[0] != 2:
            qrho, note = rho.permuted((1, 0)), "subsystems swapped so the qubit is first"
        for rep in (
            theorem2_check(qrho, config.samples, config.seed, tol),
            theorem3_sphere_check(qrho, config.dirs, tol),
            theorem3_trace_check(qrho, tol),
        ):
            rep.note = note
            reports.append(rep)
    certificates = [r for r in reports if not r.satisfied]
    if certificates:
        conclusion = ENTANGLED
    elif tuple(rho.dims) in PPT_SUFFICIENT_DIMS and all(r.satisfied for r in ppt):
        conclusion = SEPARABLE
    else:
        conclusion = INCONCLUSIVE
    return Verdict(conclusion, certificates, reports, tuple(rho.dims))
