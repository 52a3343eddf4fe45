"""Permutations relating the sequency-ordered basis to its recursive form.

A permutation is stored as an index array ``forward`` read row-wise from its
0/1 matrix: applying the matrix ``M`` to ``x`` gives ``y[i] = x[forward[i]]``.
Dense matrices are built only for comparison with printed fixtures.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .eigen import B
from .errors import SizeError
from .hadamard import DENSE_MAX_EXPONENT, check_exponent

__all__ = [
    "IndexPermutation",
    "column_permutation",
    "counter_identity",
    "perfect_shuffle",
    "vbar_matrix",
]

# Index arrays are cheap, so the permutation itself may go as far as the fast path.
_MAX_PERMUTATION_EXPONENT = 20


@dataclass(frozen=True, eq=False)
class IndexPermutation:
    forward: np.ndarray

    def __post_init__(self):
        fwd = np.asarray(self.forward, dtype=np.intp)
        if fwd.ndim != 1 or not np.array_equal(np.sort(fwd), np.arange(fwd.size)):
            raise ValueError("forward must be a bijection on 0..N-1")
        fwd.setflags(write=False)
        object.__setattr__(self, "forward", fwd)

    @property
    def size(self) -> int:
        return self.forward.size

    def __eq__(self, other):
        if not isinstance(other, IndexPermutation):
            return NotImplemented
        return np.array_equal(self.forward, other.forward)

    def __matmul__(self, other: IndexPermutation) -> IndexPermutation:
        """Matrix product ``self @ other`` in index form."""
        if other.size != self.size:
            raise SizeError("permutation sizes differ")
        return IndexPermutation(other.forward[self.forward])

    def apply(self, x):
        """Return ``M @ x`` (gathers along the first axis)."""
        return np.asarray(x)[self.forward]

    def inverse(self) -> IndexPermutation:
        inv = np.empty_like(self.forward)
        inv[self.forward] = np.arange(self.size)
        return IndexPermutation(inv)

    def to_matrix(self) -> np.ndarray:
        m = np.zeros((self.size, self.size), dtype=np.int8)
        m[np.arange(self.size), self.forward] = 1
        return m


def perfect_shuffle(size: int) -> IndexPermutation:
    """Interleave the two halves: slot ``2i`` takes ``i``, slot ``2i+1`` takes ``i + N/2``."""
    if size < 2 or size % 2:
        raise SizeError(f"perfect shuffle needs an even size >= 2, got {size}")
    half = size // 2
    fwd = np.empty(size, dtype=np.intp)
    fwd[0::2] = np.arange(half)
    fwd[1::2] = np.arange(half, size)
    return IndexPermutation(fwd)


def counter_identity(m: int) -> IndexPermutation:
    """Reversal permutation (ones on the antidiagonal)."""
    if m < 1:
        raise SizeError(f"counter-identity needs m >= 1, got {m}")
    return IndexPermutation(np.arange(m - 1, -1, -1))


@lru_cache(maxsize=32)
def _column_permutation(n: int) -> IndexPermutation:
    if n == 1:
        return IndexPermutation(np.arange(2))
    half = _column_permutation(n - 1)
    m = half.size
    reversed_half = half @ counter_identity(m)
    block = np.concatenate([half.forward, m + reversed_half.forward])
    return perfect_shuffle(2 * m) @ IndexPermutation(block)


def column_permutation(n: int) -> IndexPermutation:
    """``P_N`` with ``V_N = Vbar_N @ P_N``.

    Built as ``P_N = S_N (P_{N/2} (+) P_{N/2} J_{N/2})`` from ``P_2 = I_2``.
    """
    return _column_permutation(check_exponent(n, _MAX_PERMUTATION_EXPONENT))


def vbar_matrix(n: int) -> np.ndarray:
    """Dense ``Vbar_N`` from ``Vbar_2k = [[Vbar_k, -b Vbar_k], [b Vbar_k, Vbar_k]]``."""
    n = check_exponent(n, DENSE_MAX_EXPONENT)
    v = np.array([[1.0, -B], [B, 1.0]])
    for _ in range(n - 1):
        v = np.block([[v, -B * v], [B * v, v]])
    return v
