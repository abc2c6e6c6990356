import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffdecomp.field import all_vectors, field
from ffdecomp.matrix import (
    candidate_left_factors,
    candidate_right_factors,
    enumerate_full_rank_factorizations,
    enumerate_gl,
    full_rank_factorize,
    gl_order,
    identity,
    inverse,
    rank,
    rank_factorize_bounded,
    rref,
    rref_with_transform,
    solve_linear,
    solve_linear_right,
)

GF2, GF3 = field(2), field(3)


def random_matrix(gf, rng, m, n, r):
    """Random m x n matrix of rank exactly r (rejection sampled)."""
    while True:
        M = gf.matmul(gf.random(rng, (m, r)), gf.random(rng, (r, n)))
        if rank(gf, M) == r:
            return M


def test_rref_examples():
    R, T = rref_with_transform(GF3, identity(3))
    assert np.array_equal(R, identity(3)) and np.array_equal(T, identity(3))
    R, T = rref_with_transform(GF2, np.zeros((2, 3), dtype=np.int64))
    assert not R.any() and np.array_equal(T, identity(2))
    M = np.array([[0, 1], [1, 1]])
    R, T = rref_with_transform(GF2, M)
    assert np.array_equal(R, identity(2))
    assert T.tolist() == [[1, 1], [1, 0]]
    assert np.array_equal(GF2.matmul(T, M), identity(2))


def test_rank_examples():
    assert rank(GF2, np.zeros((3, 3), dtype=np.int64)) == 0
    assert rank(GF3, identity(4)) == 4
    assert rank(GF2, np.ones((3, 3), dtype=np.int64)) == 1


def test_rref_shape(gf, rng):
    for _ in range(30):
        m, n = rng.integers(1, 6, 2)
        M = gf.random(rng, (m, n))
        R, T = rref_with_transform(gf, M)
        assert np.array_equal(gf.matmul(T, M), R)
        assert np.array_equal(gf.matmul(T, inverse(gf, T)), identity(m))
        lead = []
        for row in R:
            nz = np.flatnonzero(row)
            if nz.size == 0:
                lead.append(None)
                continue
            assert row[nz[0]] == 1
            assert np.count_nonzero(R[:, nz[0]]) == 1
            lead.append(int(nz[0]))
        live = [c for c in lead if c is not None]
        assert live == sorted(live) and len(set(live)) == len(live)
        assert all(c is None for c in lead[len(live):])


def test_bounded_factorization_examples():
    C, F = rank_factorize_bounded(GF2, np.zeros((3, 4), dtype=np.int64), 2)
    assert C.shape == (3, 0) and F.shape == (0, 4)
    C, F = rank_factorize_bounded(GF2, np.ones((3, 3), dtype=np.int64), 1)
    assert C.ravel().tolist() == [1, 1, 1] and F.ravel().tolist() == [1, 1, 1]
    M = np.zeros((3, 3), dtype=np.int64)
    M[:2, :2] = identity(2)
    assert rank_factorize_bounded(GF2, M, 1) is None


def test_bounded_factorization_random(gf, rng):
    for _ in range(40):
        m, n = rng.integers(1, 7, 2)
        r = int(rng.integers(0, min(m, n) + 1))
        M = random_matrix(gf, rng, m, n, r)
        for bound in range(min(m, n) + 1):
            out = rank_factorize_bounded(gf, M, bound)
            if bound < r:
                assert out is None
            else:
                C, F = out
                assert C.shape == (m, r) and F.shape == (r, n)
                assert np.array_equal(gf.matmul(C, F), M)


def test_full_rank_factorize_examples():
    C, F = full_rank_factorize(GF3, identity(2))
    assert np.array_equal(C, identity(2)) and np.array_equal(F, identity(2))
    C, F = full_rank_factorize(GF2, np.ones((2, 2), dtype=np.int64))
    assert C.ravel().tolist() == [1, 1] and F.ravel().tolist() == [1, 1]
    M = np.array([[1, 2], [2, 1]])
    C, F = full_rank_factorize(GF3, M)
    assert np.array_equal(GF3.matmul(C, F), M)
    assert np.array_equal(rref(GF3, F), F)


@pytest.mark.parametrize("q,r,expected", [(2, 1, 1), (2, 2, 6), (3, 1, 2), (3, 2, 48)])
def test_gl_counts(q, r, expected):
    gf = field(q)
    mats = list(enumerate_gl(gf, r))
    assert len(mats) == expected == gl_order(q, r)
    assert len({m.tobytes() for m in mats}) == expected


def test_gl_brute_force_gf2():
    naive = [
        np.array(flat).reshape(2, 2)
        for flat in itertools.product(range(2), repeat=4)
        if rank(GF2, np.array(flat).reshape(2, 2)) == 2
    ]
    assert [m.tolist() for m in enumerate_gl(GF2, 2)] == [m.tolist() for m in naive]


def test_factorization_counts(rng):
    M1 = random_matrix(GF2, rng, 3, 4, 1)
    assert len(list(enumerate_full_rank_factorizations(GF2, M1))) == 1
    M2 = random_matrix(GF2, rng, 3, 4, 2)
    assert len(list(enumerate_full_rank_factorizations(GF2, M2))) == 6
    M3 = random_matrix(GF3, rng, 3, 3, 1)
    assert len(list(enumerate_full_rank_factorizations(GF3, M3))) == 2


def test_solve_linear_examples(rng):
    B = GF3.random(rng, (3, 2))
    assert np.array_equal(solve_linear(GF3, identity(3), B), B)
    assert solve_linear(GF3, np.zeros((2, 2), dtype=np.int64), np.array([[1], [0]])) is None
    X = solve_linear(GF2, np.array([[1], [1]]), np.array([[1], [1]]))
    assert X.tolist() == [[1]]


def test_solve_linear_random(gf, rng):
    for _ in range(40):
        m, n, k = rng.integers(1, 5, 3)
        A = gf.random(rng, (m, n))
        X0 = gf.random(rng, (n, k))
        B = gf.matmul(A, X0)
        X = solve_linear(gf, A, B)
        assert np.array_equal(gf.matmul(A, X), B)
        Y = solve_linear_right(gf, A, gf.matmul(gf.random(rng, (k, m)), A))
        assert Y is not None


def test_solve_linear_none_matches_brute_force():
    # every 2x2 system with one right-hand side over GF(2)
    xs = all_vectors(GF2, 2)
    for flat in itertools.product(range(2), repeat=6):
        A = np.array(flat[:4]).reshape(2, 2)
        b = np.array(flat[4:]).reshape(2, 1)
        exists = any(np.array_equal(GF2.matmul(A, x[:, None]), b) for x in xs)
        assert (solve_linear(GF2, A, b) is not None) == exists


def test_candidate_left_factors_gf2(rng):
    D = random_matrix(GF2, rng, 3, 3, 2)
    cands = candidate_left_factors(GF2, D, 3)
    direct = set()
    for flat in itertools.product(range(2), repeat=9):
        U = np.array(flat).reshape(3, 3)
        if rank(GF2, U) == 2 and rank(GF2, np.hstack([U, D])) == 2:
            direct.add(U.tobytes())
    assert {U.tobytes() for U in cands} == direct
    assert len(cands) == len(direct) == 42


def test_candidate_rank1(rng):
    D = random_matrix(GF2, rng, 4, 4, 1)
    (U,) = candidate_left_factors(GF2, D, 1)
    C, _ = full_rank_factorize(GF2, D)
    assert np.array_equal(U, C)


def test_candidate_factors_span(rng):
    D = random_matrix(GF3, rng, 4, 5, 2)
    for U in candidate_left_factors(GF3, D, 3):
        assert rank(GF3, U) == 2 and rank(GF3, np.hstack([U, D])) == 2
        assert solve_linear(GF3, U, D) is not None
    for V in candidate_right_factors(GF3, D, 3):
        assert rank(GF3, V) == 2 and rank(GF3, np.vstack([V, D])) == 2


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_rank_of_product(q, m, r, n, seed):
    gf = field(q)
    rng = np.random.default_rng(seed)
    U, V = gf.random(rng, (m, r)), gf.random(rng, (r, n))
    rp = rank(gf, gf.matmul(U, V))
    ru, rv = rank(gf, U), rank(gf, V)
    assert ru <= rp or rv < r
    assert ru < r or rv <= rp
    assert ru >= rp and rv >= rp
