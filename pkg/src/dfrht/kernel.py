"""Fast DFRHT kernel.

The transform is ``y = Vbar @ diag(spectral) @ Vbar.T @ x`` where both
products with ``Vbar = sum_k b**k A^(k)`` run through the same sparse
pipeline:

* an ``n``-stage cascade of 0/+-1 matrices producing ``[A^(0)x; ...; A^(n)x]``
  using additions only,
* a diagonal scaling of segment ``k`` by ``b**k``,
* an aggregation that sums the segments (``Vbar``) or sums them with
  alternating signs (``Vbar.T``, since ``A^(k).T = (-1)**k A^(k)``).

Every routine takes an optional :class:`OpCount` and adds the real
multiplications and additions it performs. Negation is not counted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .eigen import B, C, b_powers
from .errors import ShapeError, SizeError
from .hadamard import DENSE_MAX_EXPONENT, check_exponent
from .permute import IndexPermutation, column_permutation

__all__ = [
    "FAST_MAX_EXPONENT",
    "ComponentMatrices",
    "OpCount",
    "StageMatrix",
    "TransformPlan",
    "a_cascade_apply",
    "aggregate_apply",
    "b_scale_apply",
    "component_matrices",
    "dfrht",
    "dfrht_apply",
    "direct_op_counts",
    "make_plan",
    "make_workspace",
    "predicted_op_counts",
    "stage_matrix",
    "vbar_apply",
    "vbar_transpose_apply",
]

FAST_MAX_EXPONENT = 20

_A2 = (
    np.array([[1, 0], [0, 1]], dtype=np.int8),
    np.array([[0, -1], [1, 0]], dtype=np.int8),
)


@dataclass
class OpCount:
    """Real multiplications and real additions consumed by a computation."""

    real_mults: int = 0
    real_adds: int = 0

    def __add__(self, other: OpCount) -> OpCount:
        return OpCount(self.real_mults + other.real_mults, self.real_adds + other.real_adds)

    def as_dict(self) -> dict:
        return {"real_mults": self.real_mults, "real_adds": self.real_adds}


@dataclass(frozen=True, eq=False)
class TransformPlan:
    """Precomputed state for one ``(n, alpha)`` pair.

    ``spectral_diag[i] = exp(-j*pi*alpha*order[i]) / c**n`` where ``order`` is
    the forward index array of the column permutation ``P_N``.
    """

    n: int
    alpha: float
    b_powers: np.ndarray
    permutation: IndexPermutation
    spectral_diag: np.ndarray
    workspace_len: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "workspace_len", (self.n + 1) << self.n)

    @property
    def size(self) -> int:
        return 1 << self.n

    def __repr__(self):
        return f"TransformPlan(n={self.n}, alpha={self.alpha!r})"


def _spectral_diag(order: np.ndarray, alpha: float, n: int) -> np.ndarray:
    # phase modulo 2*pi, reduced in units of pi; fmod is exact and order is integral
    turns = np.fmod(np.fmod(alpha, 2.0) * order.astype(float), 2.0)
    phase = np.pi * turns
    diag = (np.cos(phase) - 1j * np.sin(phase)) / C**n
    diag.setflags(write=False)
    return diag


def make_plan(n: int, alpha: float) -> TransformPlan:
    """Precompute the permuted spectral diagonal and ``b`` powers for size ``2**n``."""
    n = check_exponent(n, FAST_MAX_EXPONENT)
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise ValueError(f"alpha must be finite, got {alpha}")
    perm = column_permutation(n)
    return TransformPlan(n, alpha, b_powers(n), perm, _spectral_diag(perm.forward, alpha, n))


def make_workspace(n: int) -> np.ndarray:
    """Scratch for one apply call: two ping-pong regions of ``(n+1)*2**n`` complex slots.

    A real pass uses the leading half of each region reinterpreted as float64.
    """
    n = check_exponent(n, FAST_MAX_EXPONENT)
    return np.empty((2, (n + 1) << n), dtype=np.complex128)


def _regions(workspace, n, dtype):
    length = (n + 1) << n
    if workspace is None:
        return np.empty(length, dtype), np.empty(length, dtype)
    if workspace.dtype != np.complex128 or workspace.shape != (2, length):
        raise ShapeError(f"workspace must be complex128 of shape (2, {length})")
    if dtype == np.complex128:
        return workspace[0], workspace[1]
    return workspace[0].view(np.float64)[:length], workspace[1].view(np.float64)[:length]


def _as_signal(x, size):
    x = np.asarray(x)
    if x.ndim != 1 or x.shape[0] != size:
        raise ShapeError(f"expected a vector of length {size}, got shape {x.shape}")
    if np.iscomplexobj(x):
        return x.astype(np.complex128, copy=False)
    return x.astype(np.float64, copy=False)


def _cost(arr) -> int:
    # a complex add or complex-by-real multiply costs two real ones
    return 2 if np.iscomplexobj(arr) else 1


def _exponent_of(plan_or_n):
    if isinstance(plan_or_n, TransformPlan):
        return plan_or_n.n, plan_or_n.b_powers
    n = check_exponent(plan_or_n, FAST_MAX_EXPONENT)
    return n, b_powers(n)


def _cascade_stages(x, n, counter, regions):
    # Intermediate layout after stage k is (segment m, offset t, block j) with
    # the block index innermost, i.e. a transpose of the stage-matrix row
    # order. Stage 0 is x itself and after stage n (one block) it coincides
    # with [A^(0)x; ...; A^(n)x].
    size = 1 << n
    cur = x
    for k in range(1, n + 1):
        h = 1 << (k - 1)
        blocks = size >> k
        src = cur.reshape(k, h, blocks, 2)
        out = regions[(k - 1) % 2][: (k + 1) * size]
        dst = out.reshape(k + 1, 2, h, blocks)
        dst[0, 0] = src[0, :, :, 0]
        dst[0, 1] = src[0, :, :, 1]
        if k > 1:
            np.subtract(src[1:, :, :, 0], src[:-1, :, :, 1], out=dst[1:k, 0])
            np.add(src[:-1, :, :, 0], src[1:, :, :, 1], out=dst[1:k, 1])
            if counter is not None:
                counter.real_adds += _cost(out) * dst[1:k].size
        np.negative(src[k - 1, :, :, 1], out=dst[k, 0])
        dst[k, 1] = src[k - 1, :, :, 0]
        cur = out
        yield k, dst


def _stage_rows(dst):
    """Reorder a stage output into the row order of :class:`StageMatrix`."""
    segs, _, h, blocks = dst.shape
    return dst.reshape(segs, 2 * h, blocks).transpose(2, 0, 1).ravel()


def _cascade(x, n, counter, regions):
    for _, dst in _cascade_stages(x, n, counter, regions):
        pass
    return dst.reshape(-1)


def _scale(v, bpow, counter):
    segs = v.reshape(bpow.size, -1)
    segs[1:] *= bpow[1:, None]
    if counter is not None:
        counter.real_mults += _cost(v) * segs[1:].size


def _aggregate(v, n, alternating, counter):
    segs = v.reshape(n + 1, -1)
    acc = segs[0].copy()
    for k in range(1, n + 1):
        if alternating and k % 2:
            acc -= segs[k]
        else:
            acc += segs[k]
    if counter is not None:
        counter.real_adds += _cost(v) * n * segs.shape[1]
    return acc


def a_cascade_apply(n: int, x, counter: OpCount | None = None, workspace=None) -> np.ndarray:
    """Stacked products ``[A^(0) x; A^(1) x; ...; A^(n) x]`` via the staged factorization.

    Stage ``k`` works on ``2**n / 2**k`` independent blocks; in each block the
    first and last output segments are copies (or negated copies) and the
    ``k - 1`` middle segments each cost ``2**k`` additions.

    Args:
        n: exponent, ``len(x) == 2**n``.
        x: real or complex input vector.
        counter: accumulates real additions if given.
        workspace: optional array from :func:`make_workspace`; when given, the
            result is a view into it.

    Returns:
        Vector of length ``(n + 1) * 2**n``; segment ``k`` is ``A^(k) @ x``.
    """
    n = check_exponent(n, FAST_MAX_EXPONENT)
    x = _as_signal(x, 1 << n)
    return _cascade(x, n, counter, _regions(workspace, n, x.dtype))


def b_scale_apply(plan, v, counter: OpCount | None = None) -> np.ndarray:
    """Multiply segment ``k`` of a stacked vector by ``b**k``. ``plan`` may be a plan or an exponent."""
    n, bpow = _exponent_of(plan)
    v = _as_signal(v, (n + 1) << n).copy()
    _scale(v, bpow, counter)
    return v


def aggregate_apply(n: int, v, signs: str = "uniform", counter: OpCount | None = None) -> np.ndarray:
    """Sum the ``n + 1`` segments of ``v``; ``signs="alternating"`` weights segment ``k`` by ``(-1)**k``."""
    if signs not in ("uniform", "alternating"):
        raise ValueError(f"signs must be 'uniform' or 'alternating', got {signs!r}")
    n = check_exponent(n, FAST_MAX_EXPONENT)
    v = _as_signal(v, (n + 1) << n)
    return _aggregate(v, n, signs == "alternating", counter)


def _vbar(x, n, bpow, transpose, counter, regions):
    stacked = _cascade(x, n, counter, regions)
    _scale(stacked, bpow, counter)
    return _aggregate(stacked, n, transpose, counter)


def vbar_apply(n: int, x, counter: OpCount | None = None, workspace=None) -> np.ndarray:
    """``Vbar_N @ x`` in ``n*N`` multiplications and ``N*n*(n+1)/2`` additions (real input)."""
    n = check_exponent(n, FAST_MAX_EXPONENT)
    x = _as_signal(x, 1 << n)
    return _vbar(x, n, b_powers(n), False, counter, _regions(workspace, n, x.dtype))


def vbar_transpose_apply(n: int, x, counter: OpCount | None = None, workspace=None) -> np.ndarray:
    """``Vbar_N.T @ x``: same cascade and scaling, alternating-sign aggregation."""
    n = check_exponent(n, FAST_MAX_EXPONENT)
    x = _as_signal(x, 1 << n)
    return _vbar(x, n, b_powers(n), True, counter, _regions(workspace, n, x.dtype))


def dfrht_apply(plan: TransformPlan, x, workspace=None) -> tuple[np.ndarray, OpCount]:
    """Apply the fractional Hadamard transform of order ``plan.alpha``.

    Real input keeps the first pass (``Vbar.T @ x``) in real arithmetic, so
    the cost is exactly ``N(3n+2)`` real multiplications and
    ``3Nn(n+1)/2`` real additions. Complex input costs more.

    Returns:
        ``(y, count)`` with ``y`` a new complex128 vector.
    """
    n = plan.n
    x = _as_signal(x, plan.size)
    if workspace is None:
        workspace = make_workspace(n)
    count = OpCount()
    u = _vbar(x, n, plan.b_powers, True, count, _regions(workspace, n, x.dtype))
    if np.iscomplexobj(u):
        # complex * complex: 4 real mults, 2 real adds
        count.real_mults += 4 * u.size
        count.real_adds += 2 * u.size
    else:
        count.real_mults += 2 * u.size
    w = plan.spectral_diag * u
    y = _vbar(w, n, plan.b_powers, False, count, _regions(workspace, n, w.dtype))
    return y, count


def dfrht(x, alpha: float) -> np.ndarray:
    """Convenience wrapper: fractional Hadamard transform of ``x`` (length a power of two)."""
    x = np.asarray(x)
    size = x.shape[0] if x.ndim == 1 else 0
    if size < 2 or size & (size - 1):
        raise ShapeError(f"length must be a power of two >= 2, got shape {x.shape}")
    y, _ = dfrht_apply(make_plan(size.bit_length() - 1, alpha), x)
    return y


def predicted_op_counts(n: int) -> OpCount:
    """``(N(3n+2), 3Nn(n+1)/2)`` for real input of length ``N = 2**n``."""
    size = 1 << n
    return OpCount(size * (3 * n + 2), 3 * size * n * (n + 1) // 2)


def direct_op_counts(n: int) -> OpCount:
    """Cost of multiplying a precomputed complex ``N x N`` matrix by a real vector."""
    return OpCount(2 ** (2 * n + 1), 2 ** (n + 1) * (2**n - 1))


# --- dense fixtures ----------------------------------------------------------


@dataclass(frozen=True)
class ComponentMatrices:
    """The 0/+-1 matrices ``A^(0..n)`` with ``Vbar_N = sum_k b**k A^(k)``."""

    n: int
    A: tuple

    def stacked(self) -> np.ndarray:
        return np.vstack(self.A)


def component_matrices(n: int) -> ComponentMatrices:
    """Build ``A_N^(k)`` by block doubling from ``A_2^(0) = I`` and ``A_2^(1) = [[0,-1],[1,0]]``.

    ``A^(k) -> [[A^(k), -A^(k-1)], [A^(k-1), A^(k)]]`` for ``1 <= k < n``;
    the new top index uses a zero block for the missing ``A^(n)``.
    """
    n = check_exponent(n, DENSE_MAX_EXPONENT)
    mats = list(_A2)
    for m in range(2, n + 1):
        half = 1 << (m - 1)
        zero = np.zeros((half, half), dtype=np.int8)
        prev = mats + [zero]
        nxt = [np.eye(2 * half, dtype=np.int8)]
        for k in range(1, m + 1):
            nxt.append(np.block([[prev[k], -prev[k - 1]], [prev[k - 1], prev[k]]]))
        mats = nxt
    return ComponentMatrices(n, tuple(mats))


@dataclass(frozen=True)
class StageMatrix:
    """Stage ``k`` of the cascade for size ``2**n``: maps ``k*N`` inputs to ``(k+1)*N`` outputs.

    It is ``I_{N/2^k}`` (x) a block of ``k + 1`` band rows. Band row 0 is
    ``A_2^(0) (x) [1 0 .. 0] (x) I_h``, band row ``k`` is
    ``A_2^(1) (x) [0 .. 0 1] (x) I_h`` (``h = 2**(k-1)``), and band row ``m``
    in between adds row 0 rotated right by ``m*h`` columns to row ``k``
    rotated left by ``(k-m)*h`` columns.
    """

    n: int
    k: int

    @property
    def shape(self) -> tuple[int, int]:
        size = 1 << self.n
        return (self.k + 1) * size, self.k * size

    @property
    def num_blocks(self) -> int:
        return 1 << (self.n - self.k)

    @property
    def additions(self) -> int:
        """Real additions for one real input vector."""
        return (self.k - 1) * (1 << self.n)

    def block(self) -> np.ndarray:
        k, h = self.k, 1 << (self.k - 1)
        first = np.zeros((1, k), dtype=np.int8)
        first[0, 0] = 1
        last = np.zeros((1, k), dtype=np.int8)
        last[0, -1] = 1
        eye = np.eye(h, dtype=np.int8)
        top = np.kron(np.kron(_A2[0], first), eye)
        bottom = np.kron(np.kron(_A2[1], last), eye)
        rows = [top]
        for m in range(1, k):
            rows.append(np.roll(top, m * h, axis=1) + np.roll(bottom, -(k - m) * h, axis=1))
        rows.append(bottom)
        return np.vstack(rows)

    def to_dense(self) -> np.ndarray:
        return np.kron(np.eye(self.num_blocks, dtype=np.int8), self.block())


def stage_matrix(n: int, k: int) -> StageMatrix:
    n = check_exponent(n, DENSE_MAX_EXPONENT)
    if not 1 <= k <= n:
        raise SizeError(f"stage k={k} outside 1..{n}")
    return StageMatrix(n, k)
