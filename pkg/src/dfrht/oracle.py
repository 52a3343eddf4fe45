"""Dense fractional Hadamard matrices straight from the eigendecomposition.

``H^a = V diag(exp(-j*pi*k*a)) V.T / c**n`` with ``V`` the unnormalized
sequency-ordered eigenbasis. Deliberately naive: O(N^2) memory, O(N^3) build.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .eigen import C, sequenced_eigenbasis
from .errors import ShapeError

__all__ = ["DenseFractionalMatrix", "dense_apply", "dfrht_dense_matrix"]


@dataclass(frozen=True)
class DenseFractionalMatrix:
    n: int
    alpha: float
    entries: np.ndarray

    @property
    def size(self) -> int:
        return 1 << self.n


def dfrht_dense_matrix(n: int, alpha: float) -> DenseFractionalMatrix:
    basis = sequenced_eigenbasis(n)
    v = basis.columns
    k = np.arange(v.shape[1])
    phase = np.pi * alpha * k
    # two real products avoid upcasting V.T to complex
    re = (v * np.cos(phase)) @ v.T
    im = (v * -np.sin(phase)) @ v.T
    entries = (re + 1j * im) / C**n
    return DenseFractionalMatrix(basis.n, float(alpha), entries)


def dense_apply(m: DenseFractionalMatrix, x) -> np.ndarray:
    """Plain ``M @ x``; always returns complex128."""
    x = np.asarray(x)
    if x.ndim != 1 or x.shape[0] != m.size:
        raise ShapeError(f"expected a vector of length {m.size}, got shape {x.shape}")
    return m.entries @ x.astype(np.complex128, copy=False)
