"""Normalized Sylvester-Hadamard matrices.

These are reference objects for testing: the fast fractional kernel never
materializes ``H_N``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ShapeError, SizeError

__all__ = ["DENSE_MAX_EXPONENT", "HadamardMatrix", "check_exponent", "hadamard_apply", "hadamard_matrix"]

# Dense N x N objects are capped at N = 4096.
DENSE_MAX_EXPONENT = 12


def check_exponent(n, limit=DENSE_MAX_EXPONENT):
    """Validate ``1 <= n <= limit`` and return ``n`` as an int."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise SizeError(f"exponent must be an integer, got {n!r}")
    if not 1 <= n <= limit:
        raise SizeError(f"exponent n={n} outside supported range 1..{limit}")
    return int(n)


@dataclass(frozen=True)
class HadamardMatrix:
    """Normalized Hadamard matrix of order ``N = 2**n``; entries are +-2**(-n/2)."""

    n: int
    entries: np.ndarray

    @property
    def size(self) -> int:
        return 1 << self.n


@lru_cache(maxsize=16)
def _sylvester(n: int) -> np.ndarray:
    h2 = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
    h = h2
    for _ in range(n - 1):
        h = np.block([[h, h], [h, -h]]) / np.sqrt(2.0)
    h.setflags(write=False)
    return h


def hadamard_matrix(n: int) -> HadamardMatrix:
    """Build the normalized ``H_{2^n}`` by Sylvester doubling.

    Each doubling step is ``[[H, H], [H, -H]] / sqrt(2)``.

    Raises:
        SizeError: if ``n`` is not in ``1..DENSE_MAX_EXPONENT``.
    """
    n = check_exponent(n)
    return HadamardMatrix(n, _sylvester(n))


def hadamard_apply(n: int, x) -> np.ndarray:
    """Return ``H_N @ x`` using the dense matrix. Real input gives real output."""
    h = hadamard_matrix(n).entries
    x = np.asarray(x)
    if x.ndim != 1 or x.shape[0] != h.shape[0]:
        raise ShapeError(f"expected a vector of length {h.shape[0]}, got shape {x.shape}")
    return h @ x
