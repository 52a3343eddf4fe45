"""Fast discrete fractional Hadamard transform.

Quick use::

    >>> import numpy as np
    >>> from dfrht import dfrht
    >>> y = dfrht(np.array([1.0, 1.0]), 1.0)   # plain normalized Hadamard
    >>> np.allclose(y, [np.sqrt(2), 0])
    True

For repeated transforms of one size and order, build a plan once with
:func:`make_plan` and call :func:`dfrht_apply`.
"""

from .errors import DegenerateInputError, DFRHTError, ShapeError, SizeError
from .hadamard import HadamardMatrix, hadamard_apply, hadamard_matrix
from .kernel import (
    OpCount,
    TransformPlan,
    dfrht,
    dfrht_apply,
    direct_op_counts,
    make_plan,
    make_workspace,
    predicted_op_counts,
    vbar_apply,
    vbar_transpose_apply,
)
from .oracle import DenseFractionalMatrix, dense_apply, dfrht_dense_matrix

__all__ = [
    "DFRHTError",
    "DegenerateInputError",
    "DenseFractionalMatrix",
    "HadamardMatrix",
    "OpCount",
    "ShapeError",
    "SizeError",
    "TransformPlan",
    "dense_apply",
    "dfrht",
    "dfrht_apply",
    "dfrht_dense_matrix",
    "direct_op_counts",
    "hadamard_apply",
    "hadamard_matrix",
    "make_plan",
    "make_workspace",
    "predicted_op_counts",
    "vbar_apply",
    "vbar_transpose_apply",
]
