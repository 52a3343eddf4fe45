"""Sequency-ordered eigenvectors of the normalized Hadamard matrix.

Eigenvectors are kept unnormalized: every entry is a signed power of
``b = sqrt(2) - 1`` and every column has squared norm ``c**n`` with
``c = 1 + b**2``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError
from .hadamard import DENSE_MAX_EXPONENT, check_exponent

__all__ = [
    "B",
    "C",
    "Constants",
    "SequencedEigenbasis",
    "b_powers",
    "base_eigenvectors",
    "constants",
    "extend_hat",
    "extend_tilde",
    "sequenced_eigenbasis",
    "sign_changes",
]

B = np.sqrt(2.0) - 1.0
C = 1.0 + B * B


def b_powers(n: int) -> np.ndarray:
    """Return ``[b**0, b**1, ..., b**n]`` built by repeated multiplication."""
    out = np.empty(n + 1)
    out[0] = 1.0
    for k in range(1, n + 1):
        out[k] = out[k - 1] * B
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class Constants:
    b: float
    c: float
    b_powers: np.ndarray


def constants(n: int) -> Constants:
    return Constants(B, C, b_powers(n))


@dataclass(frozen=True)
class SequencedEigenbasis:
    """Unnormalized eigenvectors of ``H_N`` as columns, ordered by sequency.

    Column ``k`` has exactly ``k`` sign changes and eigenvalue ``(-1)**k``.
    """

    n: int
    columns: np.ndarray
    eigen_signs: np.ndarray

    @property
    def size(self) -> int:
        return 1 << self.n


def base_eigenvectors():
    """Eigenvectors of ``H_2`` for eigenvalues +1 and -1, with their signs."""
    v0 = np.array([1.0, B])
    v1 = np.array([-B, 1.0])
    return (v0, v1), (1, -1)


def extend_hat(v) -> np.ndarray:
    """``[v; b*v]``: eigenvector of the doubled Hadamard matrix, same eigenvalue."""
    v = np.asarray(v, dtype=float)
    return np.concatenate([v, B * v])


def extend_tilde(v) -> np.ndarray:
    """``[-b*v; v]``: eigenvector of the doubled Hadamard matrix, negated eigenvalue."""
    v = np.asarray(v, dtype=float)
    return np.concatenate([-B * v, v])


def _hat(m):
    return np.concatenate([m, B * m], axis=0)


def _tilde(m):
    return np.concatenate([-B * m, m], axis=0)


def sequenced_eigenbasis(n: int) -> SequencedEigenbasis:
    """Build ``V_N`` level by level from the ``H_2`` eigenvectors.

    At each doubling, columns ``2l`` and ``2l+1`` of the previous level
    produce columns ``4l..4l+3`` of the next as hat, tilde, tilde, hat.
    """
    n = check_exponent(n, DENSE_MAX_EXPONENT)
    (v0, v1), _ = base_eigenvectors()
    v = np.column_stack([v0, v1])
    for _ in range(n - 1):
        size = v.shape[0]
        even, odd = v[:, 0::2], v[:, 1::2]
        nxt = np.empty((2 * size, 2 * size))
        nxt[:, 0::4] = _hat(even)
        nxt[:, 1::4] = _tilde(even)
        nxt[:, 2::4] = _tilde(odd)
        nxt[:, 3::4] = _hat(odd)
        v = nxt
    v.setflags(write=False)
    signs = np.where(np.arange(1 << n) % 2 == 0, 1, -1)
    signs.setflags(write=False)
    return SequencedEigenbasis(n, v, signs)


def sign_changes(v) -> int:
    """Count adjacent pairs of strictly opposite sign.

    Raises:
        DegenerateInputError: if any entry is exactly zero.
    """
    s = np.sign(np.asarray(v, dtype=float))
    if np.any(s == 0):
        raise DegenerateInputError("sign changes are undefined for vectors with zero entries")
    return int(np.count_nonzero(s[1:] != s[:-1]))
