import numpy as np
import pytest

from ffdecomp.field import field
from ffdecomp.tensor import (
    Decomposition,
    evaluate,
    flatten_slices,
    identity_gadget,
    outer3,
    random_decomposition,
    rank1_split,
    unflatten_slices,
)

GF2, GF3 = field(2), field(3)


def test_zero_factors_give_zero_tensor():
    d = Decomposition.zero(3, (2, 3, 4))
    assert not evaluate(GF3, d).any()
    assert evaluate(GF3, d).shape == (2, 3, 4)


def test_identity_gadget_decomposition():
    F = np.eye(2, dtype=np.int64)
    assert np.array_equal(evaluate(GF2, Decomposition(F, F, F)), identity_gadget())
    I = identity_gadget()
    assert I[0, 0, 0] == I[1, 1, 1] == 1 and I.sum() == 2


def test_single_term(gf, rng):
    a, b, c = gf.random(rng, 3), gf.random(rng, 4), gf.random(rng, 2)
    T = evaluate(gf, Decomposition(a[None], b[None], c[None]))
    for i, j, k in np.ndindex(T.shape):
        assert T[i, j, k] == gf.mul(gf.mul(int(a[i]), int(b[j])), int(c[k]))
    assert np.array_equal(T, outer3(gf, a, b, c))


def test_evaluate_is_sum_of_terms(gf, rng):
    d = random_decomposition(gf, 3, (3, 2, 4), rng)
    acc = np.zeros((3, 2, 4), dtype=np.int64)
    for a, b, c in d.terms():
        acc = gf.add(acc, outer3(gf, a, b, c))
    assert np.array_equal(evaluate(gf, d), acc)
    # term order does not matter
    assert np.array_equal(evaluate(gf, d.permuted([2, 0, 1])), acc)


def test_flatten_examples():
    assert not flatten_slices(np.zeros((2, 2, 2), dtype=np.int64)).any()
    assert flatten_slices(identity_gadget()).tolist() == [[1, 0, 0, 0], [0, 0, 0, 1]]
    assert flatten_slices(np.array([[[2]]])).tolist() == [[2]]


def test_flatten_round_trip(rng):
    T = GF3.random(rng, (3, 4, 5))
    M = flatten_slices(T)
    assert M.shape == (3, 20)
    assert np.array_equal(unflatten_slices(M, 4, 5), T)


def test_rank1_split_examples():
    u, v = rank1_split(GF2, np.zeros((2, 3), dtype=np.int64))
    assert not u.any() and not v.any()
    u, v = rank1_split(GF2, np.ones((2, 2), dtype=np.int64))
    assert u.tolist() == [1, 1] and v.tolist() == [1, 1]
    # [[2,1],[1,2]] has determinant 0 over GF(3), so it does split
    M = np.array([[2, 1], [1, 2]])
    u, v = rank1_split(GF3, M)
    assert np.array_equal(GF3.mul(u[:, None], v[None, :]), M)
    with pytest.raises(ValueError):
        rank1_split(GF3, np.eye(2, dtype=np.int64))


def test_decomposition_validation():
    with pytest.raises(ValueError):
        Decomposition(np.zeros((2, 3)), np.zeros((1, 3)), np.zeros((2, 3)))
    d = Decomposition(np.ones((1, 2)), np.ones((1, 3)), np.ones((1, 4)))
    assert d.rank == 1 and d.dims == (2, 3, 4)
