"""Deterministic random streams built on SplitMix64.

The generator is counter based: the ``k``-th 64-bit word of a stream seeded
with ``s`` is ``mix64(s + k * 0x9E3779B97F4A7C15 mod 2**64)`` for ``k = 1, 2, ...``
where ``mix64`` is the SplitMix64 finalizer

    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z = z ^ (z >> 31)

Derived quantities:

* uniform on [0, 1):  ``(w >> 11) * 2**-53``
* uniform on (0, 1]:  ``((w >> 11) + 1) * 2**-53``
* standard normal pairs via Box-Muller from two consecutive words
  ``u1`` (on (0, 1]) and ``u2`` (on [0, 1)):
  ``sqrt(-2 ln u1) * (cos 2 pi u2, sin 2 pi u2)``
* exponential: ``-ln u1`` with ``u1`` on (0, 1]

Independent sub-streams are keyed by :func:`derive_seed`, so per-sample
streams can be generated in any order (or in parallel) with identical results.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_SPLIT_GAMMA = 0xD1B54A32D192ED03
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a Python integer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def _mix64_array(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def derive_seed(seed: int, index: int) -> int:
    """Seed of the ``index``-th child stream of ``seed``."""
    return mix64((seed + (index + 1) * _SPLIT_GAMMA) & MASK64)


class SplitMix64:
    """A seeded stream of 64-bit words and the floats derived from them."""

    def __init__(self, seed: int):
        self._state = int(seed) & MASK64

    def words(self, n: int) -> np.ndarray:
        """Next ``n`` raw words as ``uint64``."""
        k = np.arange(1, n + 1, dtype=np.uint64)
        with np.errstate(over="ignore"):
            z = np.uint64(self._state) + k * np.uint64(GAMMA)
            out = _mix64_array(z)
        self._state = (self._state + n * GAMMA) & MASK64
        return out

    def uniform(self, n: int) -> np.ndarray:
        return (self.words(n) >> np.uint64(11)).astype(np.float64) * 2.0**-53

    def _uniform_open_zero(self, n: int) -> np.ndarray:
        return ((self.words(n) >> np.uint64(11)).astype(np.float64) + 1.0) * 2.0**-53

    def normal(self, n: int) -> np.ndarray:
        pairs = (n + 1) // 2
        w = self.words(2 * pairs) >> np.uint64(11)
        u1 = (w[0::2].astype(np.float64) + 1.0) * 2.0**-53
        u2 = w[1::2].astype(np.float64) * 2.0**-53
        r = np.sqrt(-2.0 * np.log(u1))
        out = np.empty(2 * pairs)
        out[0::2] = r * np.cos(2.0 * np.pi * u2)
        out[1::2] = r * np.sin(2.0 * np.pi * u2)
        return out[:n]

    def complex_normal(self, n: int) -> np.ndarray:
        """``n`` complex Gaussians; each consumes one Box-Muller pair (re, im)."""
        z = self.normal(2 * n)
        return z[0::2] + 1j * z[1::2]

    def exponential(self, n: int) -> np.ndarray:
        return -np.log(self._uniform_open_zero(n))

    def rotation(self) -> np.ndarray:
        """Haar-random 3x3 rotation from a normalized Gaussian quaternion."""
        w, x, y, z = self.normal(4)
        norm = np.sqrt(w * w + x * x + y * y + z * z)
        w, x, y, z = w / norm, x / norm, y / norm, z / norm
        return np.array(
            [
                [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
                [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
                [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
            ]
        )
