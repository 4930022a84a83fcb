import numpy as np
import pytest

from gridwlp import (
    DimensionCapError,
    SeedStream,
    kernel_basis,
    kernel_dim,
    linear_power,
    rank,
    span_dim,
    union_dim,
)
from gridwlp.linalg import (
    _echelon_modp,
    _matmul_modp,
    _rank_modp_blocked,
    intersection_dim,
    rref,
    subspace_from_rows,
)


def _rng(seed):
    return np.random.default_rng(seed)


def test_rank_identity_and_zero(fp):
    assert rank(np.eye(5, dtype=np.int64), fp) == 5
    assert rank(np.zeros((3, 7), dtype=np.int64), fp) == 0
    assert kernel_dim(np.eye(4, dtype=np.int64), fp) == 0
    assert kernel_dim(np.zeros((3, 7), dtype=np.int64), fp) == 7


def test_nine_squares_plus_duplicate(fp, grid33):
    # the 9 squares of the dual forms of a 3x3 grid span a 9-dimensional
    # space in the 10-dimensional degree-2 piece; a duplicate row adds nothing
    rows = [linear_power(grid33.dual_form_coeffs(i, j), 2, fp).coeffs
            for i in range(3) for j in range(3)]
    rows.append(rows[0].copy())
    mat = np.stack(rows)
    assert mat.shape == (10, 10)
    assert rank(mat, fp) == 9


def test_span_of_collinear_power_families(fp):
    # points (1, c, 0, 0): duals on one line; d-th powers span min(count, d+1)
    s = SeedStream(31)
    cs = s.distinct_scalars(fp, 5)
    cubes = [linear_power((1, c, 0, 0), 3, fp) for c in cs]
    assert span_dim(cubes) == 4
    assert span_dim(cubes[:3]) == 3
    assert span_dim(cubes[:1]) == 1


def test_span_invariance_under_scaling_and_shuffle(fp):
    rng = _rng(0)
    vecs = [fp.array(rng.integers(0, fp.p, 12)) for _ in range(5)]
    base = rank(np.stack(vecs), fp)
    scaled = [v * 7 % fp.p for v in vecs]
    shuffled = [scaled[i] for i in (3, 1, 4, 0, 2)]
    assert rank(np.stack(shuffled), fp) == base


def test_rank_equals_rank_of_transpose(fp):
    rng = _rng(7)
    for _ in range(10):
        m, n, r = rng.integers(2, 40, 3)
        r = min(r, m, n)
        a = rng.integers(0, fp.p, (m, r))
        b = rng.integers(0, fp.p, (r, n))
        mat = _matmul_modp(a.astype(np.int64), b.astype(np.int64), fp.p)
        assert rank(mat, fp) == rank(mat.T, fp)


def test_blocked_engine_matches_reference(fp):
    rng = _rng(12)
    for _ in range(25):
        m = int(rng.integers(1, 220))
        n = int(rng.integers(1, 220))
        r = int(rng.integers(0, min(m, n) + 1))
        if r:
            a = rng.integers(0, fp.p, (m, r)).astype(np.int64)
            b = rng.integers(0, fp.p, (r, n)).astype(np.int64)
            mat = _matmul_modp(a, b, fp.p)
        else:
            mat = np.zeros((m, n), dtype=np.int64)
        assert _rank_modp_blocked(mat, fp.p) == _echelon_modp(mat, fp.p, False)[0].shape[0]


def test_matmul_modp_matches_object_arithmetic(fp):
    rng = _rng(3)
    x = rng.integers(0, fp.p, (17, 23)).astype(np.int64)
    y = rng.integers(0, fp.p, (23, 11)).astype(np.int64)
    exact = (x.astype(object) @ y.astype(object)) % fp.p
    assert np.array_equal(_matmul_modp(x, y, fp.p), exact.astype(np.int64))


def test_prime_and_rational_ranks_agree(fp, qq):
    rng = _rng(5)
    for _ in range(5):
        mat = rng.integers(-9, 9, (12, 9))
        assert rank(fp.array(mat), fp) == rank(qq.array(mat), qq)


def test_kernel_basis_is_in_kernel(fp):
    rng = _rng(8)
    mat = rng.integers(0, fp.p, (6, 10)).astype(np.int64)
    ker = kernel_basis(mat, fp)
    assert ker.shape[0] == 10 - rank(mat, fp)
    prod = _matmul_modp(mat, ker.T % fp.p, fp.p)
    assert not prod.any()


def test_union_and_intersection(fp):
    ambient = ("demo", 10)
    rows_a = np.zeros((3, 10), dtype=np.int64)
    rows_a[0, 0] = rows_a[1, 1] = rows_a[2, 2] = 1
    rows_b = np.zeros((4, 10), dtype=np.int64)
    for i in range(4):
        rows_b[i, 3 + i] = 1
    a = subspace_from_rows(rows_a, ambient, fp)
    b = subspace_from_rows(rows_b, ambient, fp)
    assert union_dim(a, b, fp) == 7
    assert union_dim(a, a, fp) == 3
    assert intersection_dim(a, b, fp) == 0


def test_union_formula_cross_checked_by_kernel(fp):
    # dim(A cap B) two ways: rank arithmetic vs kernel of [A^T | -B^T]
    rng = _rng(21)
    for _ in range(8):
        a_rows = rng.integers(0, fp.p, (4, 8)).astype(np.int64)
        b_rows = np.vstack([a_rows[:2], rng.integers(0, fp.p, (3, 8)).astype(np.int64)])
        a = subspace_from_rows(a_rows, ("x", 8), fp)
        b = subspace_from_rows(b_rows, ("x", 8), fp)
        inter = intersection_dim(a, b, fp)
        stacked = np.hstack([a_rows.T, (-b_rows.T) % fp.p])
        k = kernel_dim(stacked, fp)
        ra, rb = rank(a_rows, fp), rank(b_rows, fp)
        assert inter == k - (a_rows.shape[0] - ra) - (b_rows.shape[0] - rb)


def test_ambient_mismatch_rejected(fp):
    a = subspace_from_rows(np.eye(3, dtype=np.int64), ("x", 3), fp)
    b = subspace_from_rows(np.eye(4, dtype=np.int64), ("y", 4), fp)
    with pytest.raises(ValueError):
        union_dim(a, b, fp)


def test_dimension_cap_guard(fp):
    with pytest.raises(DimensionCapError):
        rank(np.zeros((2, 20001), dtype=np.int64), fp)


def test_rref_pivots_are_unit_columns(fp):
    rng = _rng(4)
    mat = rng.integers(0, fp.p, (8, 12)).astype(np.int64)
    r, piv = rref(mat, fp)
    for i, pc in enumerate(piv):
        col = r[:, pc]
        assert col[i] == 1 and np.count_nonzero(col) == 1
