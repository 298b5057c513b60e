import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modlie.gfp import (
    AmbientMismatchError,
    Subspace,
    inverse,
    is_prime,
    kernel,
    matmul,
    projective_points,
    rank,
    rref,
    solve,
)


def test_is_prime():
    assert [q for q in range(20) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_rref_zero_matrix():
    red, piv = rref(np.zeros((2, 3), dtype=np.int64), 5)
    assert not red.any() and piv == []


def test_rref_identity():
    red, piv = rref(np.eye(3, dtype=np.int64), 2)
    assert np.array_equal(red, np.eye(3)) and piv == [0, 1, 2]


def test_rref_dependent_rows_mod5():
    red, piv = rref(np.array([[1, 2], [2, 4]]), 5)
    assert red.tolist() == [[1, 2], [0, 0]] and piv == [0]


def test_solve_cases():
    assert solve(np.eye(2, dtype=np.int64), [1, 2], 3).tolist() == [1, 2]
    assert solve(np.zeros((2, 2), dtype=np.int64), [1, 0], 3) is None
    assert solve(np.array([[1, 1], [0, 1]]), [2, 1], 3).tolist() == [1, 1]


def test_subspace_sum_intersect_kernel():
    e = np.eye(3, dtype=np.int64)
    assert (Subspace.span([e[0]], 2, 3) + Subspace.span([e[1]], 2, 3)).dim == 2
    inter = Subspace.span(e[:2], 2, 3) & Subspace.span(e[1:], 2, 3)
    assert inter == Subspace.span([e[1]], 2, 3)
    assert kernel(np.array([[1, 1]]), 2) == Subspace.span([[1, 1]], 2, 2)


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatchError):
        Subspace.zero(2, 3) + Subspace.zero(3, 3)


def test_matmul_large_prime_exact():
    p = 2_147_483_647  # float path would lose precision; result must still be exact
    a = np.array([[p - 1, p - 2], [3, p - 5]])
    expect = [[sum(int(a[i, k]) * int(a[k, j]) for k in range(2)) % p for j in range(2)] for i in range(2)]
    assert matmul(a, a, p).tolist() == expect


def test_projective_points_count():
    assert len(list(projective_points(3, 3))) == 13


matrices = st.tuples(st.sampled_from([2, 3, 5]), st.integers(1, 5), st.integers(1, 5), st.integers(0, 2**32 - 1))


def _mat(params):
    p, r, c, seed = params
    return np.random.default_rng(seed).integers(0, p, size=(r, c)), p


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_rref_idempotent(params):
    m, p = _mat(params)
    red, piv = rref(m, p)
    again, piv2 = rref(red, p)
    assert np.array_equal(red, again) and piv == piv2


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_rank_nullity(params):
    m, p = _mat(params)
    k = kernel(m, p)
    assert rank(m, p) + k.dim == m.shape[1]
    if k.dim:
        assert not matmul(m, k.basis.T, p).any()


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_inverse_roundtrip(p, n, seed):
    m = np.random.default_rng(seed).integers(0, p, size=(n, n))
    if rank(m, p) < n:
        return
    assert np.array_equal(matmul(m, inverse(m, p), p), np.eye(n))


@settings(max_examples=100, deadline=None)
@given(matrices, matrices)
def test_dimension_formula(a, b):
    ma, p = _mat(a)
    mb = np.random.default_rng(b[3]).integers(0, p, size=(b[1], ma.shape[1]))
    s, t = Subspace.span(ma, p, ma.shape[1]), Subspace.span(mb, p, ma.shape[1])
    assert (s + t).dim + (s & t).dim == s.dim + t.dim
    assert (s & t) <= s and s <= s + t
