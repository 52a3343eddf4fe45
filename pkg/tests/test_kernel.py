import numpy as np
import pytest

from dfrht.eigen import B, C
from dfrht.errors import ShapeError, SizeError
from dfrht.hadamard import hadamard_apply
from dfrht.kernel import (
    OpCount,
    _cascade_stages,
    _stage_rows,
    a_cascade_apply,
    aggregate_apply,
    b_scale_apply,
    component_matrices,
    dfrht,
    dfrht_apply,
    direct_op_counts,
    make_plan,
    make_workspace,
    predicted_op_counts,
    stage_matrix,
    vbar_apply,
    vbar_transpose_apply,
)
from dfrht.oracle import dense_apply, dfrht_dense_matrix
from dfrht.permute import column_permutation, vbar_matrix
import reference_matrices as pm

b = B


# --- component matrices and stages -----------------------------------------


def test_component_matrices_match_printed():
    a4 = component_matrices(2).A
    for got, want in zip(a4, [pm.A4_0, pm.A4_1, pm.A4_2]):
        np.testing.assert_array_equal(got, want)
    a8 = component_matrices(3).A
    for got, want in zip(a8, [pm.A8_0, pm.A8_1, pm.A8_2, pm.A8_3]):
        np.testing.assert_array_equal(got, want)
    assert a4[2][0, 3] == 1


@pytest.mark.parametrize("n", range(1, 7))
def test_component_matrices_structure(n):
    mats = component_matrices(n).A
    assert len(mats) == n + 1
    np.testing.assert_array_equal(mats[0], np.eye(1 << n))
    for k, a in enumerate(mats):
        assert set(np.unique(a)) <= {-1, 0, 1}
        np.testing.assert_array_equal(a.T, (-1) ** k * a)
    total = sum(b**k * a for k, a in enumerate(mats))
    assert np.max(np.abs(total - vbar_matrix(n))) <= 1e-14


def test_stage_matrices_match_printed():
    np.testing.assert_array_equal(stage_matrix(3, 1).to_dense(), pm.STAGE_16x8)
    np.testing.assert_array_equal(stage_matrix(3, 2).to_dense(), pm.STAGE_24x16)
    np.testing.assert_array_equal(stage_matrix(3, 3).to_dense(), pm.STAGE_32x24)


@pytest.mark.parametrize("n", range(1, 6))
def test_stage_product_is_stacked_components(n):
    product = np.eye(1 << n, dtype=np.int64)
    for k in range(1, n + 1):
        stage = stage_matrix(n, k)
        dense = stage.to_dense()
        assert dense.shape == stage.shape
        # additions: one per row with two nonzeros
        assert int(np.sum(np.count_nonzero(dense, axis=1) == 2)) == stage.additions
        product = dense.astype(np.int64) @ product
    np.testing.assert_array_equal(product, component_matrices(n).stacked())


def test_stage_range():
    with pytest.raises(SizeError):
        stage_matrix(3, 0)
    with pytest.raises(SizeError):
        stage_matrix(3, 4)


# --- cascade, scaling, aggregation ------------------------------------------


def test_cascade_unit_vector_gives_first_columns():
    out = a_cascade_apply(3, np.eye(8)[0]).reshape(4, 8)
    for k, a in enumerate(component_matrices(3).A):
        np.testing.assert_array_equal(out[k], a[:, 0])


@pytest.mark.parametrize("n", range(1, 8))
def test_cascade_matches_dense_components(n, rng):
    x = rng.standard_normal(1 << n)
    out = a_cascade_apply(n, x).reshape(n + 1, -1)
    for k, a in enumerate(component_matrices(n).A):
        assert np.max(np.abs(out[k] - a @ x)) <= 1e-13


@pytest.mark.parametrize("n", range(1, 7))
def test_every_stage_matches_stage_matrix_product(n, rng):
    x = rng.standard_normal(1 << n)
    expected = x
    regions = (np.empty((n + 1) << n), np.empty((n + 1) << n))
    for k, dst in _cascade_stages(x, n, None, regions):
        expected = stage_matrix(n, k).to_dense() @ expected
        np.testing.assert_allclose(_stage_rows(dst), expected, rtol=0, atol=1e-13)


def test_cascade_single_pair():
    np.testing.assert_array_equal(a_cascade_apply(1, [3.0, 5.0]), [3, 5, -5, 3])


def test_cascade_counts_additions(rng):
    count = OpCount()
    a_cascade_apply(5, rng.standard_normal(32), count)
    assert count == OpCount(0, 32 * 5 * 4 // 2)
    count = OpCount()
    a_cascade_apply(5, rng.standard_normal(32) + 0j, count)
    assert count == OpCount(0, 32 * 5 * 4)


def test_b_scale():
    np.testing.assert_allclose(b_scale_apply(1, np.ones(4)), [1, 1, b, b], rtol=1e-15)
    out = b_scale_apply(make_plan(4, 0.0), np.ones(5 * 16)).reshape(5, 16)
    np.testing.assert_allclose(out, np.repeat((b ** np.arange(5))[:, None], 16, axis=1), rtol=1e-15)
    count = OpCount()
    b_scale_apply(4, np.ones(80), count)
    assert count.real_mults == 4 * 16
    count = OpCount()
    b_scale_apply(4, np.ones(80, complex), count)
    assert count.real_mults == 2 * 4 * 16


def test_aggregate():
    np.testing.assert_array_equal(aggregate_apply(1, [1.0, 2.0, 3.0, 4.0]), [4, 6])
    np.testing.assert_array_equal(aggregate_apply(1, [1.0, 2.0, 3.0, 4.0], "alternating"), [-2, -2])
    count = OpCount()
    aggregate_apply(3, np.ones(32), "uniform", count)
    assert count.real_adds == 24
    with pytest.raises(ValueError):
        aggregate_apply(1, np.ones(4), "bogus")


def test_pipeline_pieces_compose_to_transpose(rng):
    x = rng.standard_normal(8)
    stacked = b_scale_apply(3, a_cascade_apply(3, x))
    np.testing.assert_allclose(aggregate_apply(3, stacked), pm.VBAR8 @ x, rtol=0, atol=1e-12)
    np.testing.assert_allclose(aggregate_apply(3, stacked, "alternating"), pm.VBAR8.T @ x, rtol=0, atol=1e-12)


@pytest.mark.parametrize("n", range(1, 8))
def test_vbar_apply_and_transpose(n, rng):
    x = rng.standard_normal(1 << n)
    v = vbar_matrix(n)
    assert np.max(np.abs(vbar_apply(n, x) - v @ x)) <= 1e-12
    assert np.max(np.abs(vbar_transpose_apply(n, x) - v.T @ x)) <= 1e-12
    xc = x + 1j * rng.standard_normal(1 << n)
    assert np.max(np.abs(vbar_apply(n, xc) - v @ xc)) <= 1e-12


def test_vbar_first_columns():
    np.testing.assert_allclose(vbar_apply(1, [1.0, 0.0]), [1, b], rtol=1e-15)
    np.testing.assert_allclose(vbar_transpose_apply(1, [1.0, 0.0]), [1, -b], rtol=1e-15)


@pytest.mark.parametrize("n", [1, 3, 6, 9])
def test_vbar_counts(n, rng):
    size = 1 << n
    count = OpCount()
    vbar_apply(n, rng.standard_normal(size), count)
    assert count == OpCount(n * size, size * n * (n + 1) // 2)


@pytest.mark.parametrize("n", range(1, 9))
def test_vbar_gram(n, rng):
    x = rng.standard_normal(1 << n)
    back = vbar_apply(n, vbar_transpose_apply(n, x))
    assert np.max(np.abs(back - C**n * x)) <= 1e-10


# --- plan ---------------------------------------------------------------------


def test_plan_identity_order():
    plan = make_plan(2, 0.0)
    np.testing.assert_array_equal(plan.spectral_diag, np.full(4, 1 / C**2))
    assert plan.workspace_len == 12
    assert plan.size == 4


@pytest.mark.parametrize("alpha", [0.37, 1.0, -2.6])
def test_plan_diag_is_permuted_spectrum(alpha):
    # dense P diag(exp(-j pi k a)) P^T using the printed P4
    lam = np.exp(-1j * np.pi * alpha * np.arange(4))
    expected = np.diag(pm.P4 @ np.diag(lam) @ pm.P4.T) / C**2
    np.testing.assert_allclose(make_plan(2, alpha).spectral_diag, expected, rtol=0, atol=1e-14)
    assert list(column_permutation(2).forward) == [0, 3, 1, 2]


def test_plan_order_one_signs():
    np.testing.assert_allclose(make_plan(2, 1.0).spectral_diag, np.array([1, -1, -1, 1]) / C**2, atol=1e-16)


@pytest.mark.parametrize("n", [1, 5, 12])
def test_plan_diag_modulus(n):
    diag = make_plan(n, 0.731).spectral_diag
    np.testing.assert_allclose(np.abs(diag), 1 / C**n, rtol=1e-14)


def test_plan_rejects_bad_input():
    with pytest.raises(SizeError):
        make_plan(0, 0.5)
    with pytest.raises(SizeError):
        make_plan(21, 0.5)
    with pytest.raises(ValueError):
        make_plan(3, float("nan"))


# --- full transform -------------------------------------------------------------


def test_order_zero_is_identity(rng):
    x = rng.standard_normal(64)
    y, _ = dfrht_apply(make_plan(6, 0.0), x)
    assert np.max(np.abs(y - x)) <= 1e-12


def test_order_one_pair():
    y, _ = dfrht_apply(make_plan(1, 1.0), [1.0, 1.0])
    np.testing.assert_allclose(y, [np.sqrt(2), 0], atol=1e-15)


def test_half_order_matches_oracle(rng):
    x = rng.standard_normal(8)
    y, _ = dfrht_apply(make_plan(3, 0.5), x)
    assert np.max(np.abs(y - dense_apply(dfrht_dense_matrix(3, 0.5), x))) <= 1e-10


def test_order_one_matches_hadamard(rng):
    x = rng.standard_normal(256) + 1j * rng.standard_normal(256)
    y, _ = dfrht_apply(make_plan(8, 1.0), x)
    assert np.max(np.abs(y - hadamard_apply(8, x))) <= 1e-12


def test_counts_real_and_complex(rng):
    n, size = 4, 16
    _, count = dfrht_apply(make_plan(n, 0.3), rng.standard_normal(size))
    assert count == predicted_op_counts(n)
    _, count = dfrht_apply(make_plan(n, 0.3), rng.standard_normal(size) + 1j)
    # two complex Vbar passes plus a complex-by-complex diagonal product
    assert count == OpCount(4 * n * size + 4 * size, 2 * size * n * (n + 1) + 2 * size)


def test_workspace_reuse(rng):
    plan = make_plan(5, 0.8)
    ws = make_workspace(5)
    x1, x2 = rng.standard_normal(32), rng.standard_normal(32) + 1j * rng.standard_normal(32)
    y1, _ = dfrht_apply(plan, x1, ws)
    y2, _ = dfrht_apply(plan, x2, ws)
    np.testing.assert_array_equal(y1, dfrht_apply(plan, x1)[0])
    np.testing.assert_array_equal(y2, dfrht_apply(plan, x2)[0])
    with pytest.raises(ShapeError):
        dfrht_apply(plan, x1, make_workspace(4))


def test_input_not_modified(rng):
    x = rng.standard_normal(16)
    keep = x.copy()
    dfrht_apply(make_plan(4, 0.4), x)
    np.testing.assert_array_equal(x, keep)


def test_shape_errors():
    with pytest.raises(ShapeError):
        dfrht_apply(make_plan(3, 0.5), np.ones(4))
    with pytest.raises(ShapeError):
        a_cascade_apply(2, np.ones(5))
    with pytest.raises(ShapeError):
        b_scale_apply(2, np.ones(4))
    with pytest.raises(ShapeError):
        dfrht(np.ones(6), 0.5)


def test_convenience_wrapper(rng):
    x = rng.standard_normal(32)
    np.testing.assert_array_equal(dfrht(x, 0.25), dfrht_apply(make_plan(5, 0.25), x)[0])


# --- count formulas ---------------------------------------------------------------


@pytest.mark.parametrize("n, mults, adds", [(1, 10, 6), (3, 88, 144), (10, 32768, 168960)])
def test_predicted_counts(n, mults, adds):
    assert predicted_op_counts(n) == OpCount(mults, adds)


@pytest.mark.parametrize("n, mults, adds", [(1, 8, 4), (3, 128, 112), (10, 2097152, 2095104)])
def test_direct_counts(n, mults, adds):
    assert direct_op_counts(n) == OpCount(mults, adds)
