import itertools

import numpy as np
import pytest

from ffdecomp.budget import Budget, BudgetExhausted
from ffdecomp.field import field
from ffdecomp.oracle import brute_force_decompose, brute_force_rank1_wildcard, enumerate_rank2_decompositions
from ffdecomp.tensor import evaluate, identity_gadget
from ffdecomp.wildcard import WILDCARD

GF2, GF3 = field(2), field(3)


def test_decompose_examples():
    d = brute_force_decompose(GF2, identity_gadget(), 2)
    assert d is not None and np.array_equal(evaluate(GF2, d), identity_gadget())
    assert brute_force_decompose(GF2, identity_gadget(), 1) is None
    d = brute_force_decompose(GF2, np.zeros((2, 2, 2), dtype=np.int64), 0)
    assert d is not None and d.rank == 0


def test_decompose_budget():
    with pytest.raises(BudgetExhausted):
        brute_force_decompose(GF3, np.zeros((2, 3, 3), dtype=np.int64), 3, budget=Budget(1000))


def test_decompose_first_in_order():
    # a rank-1 tensor over GF(2): the first (B, C) in lexicographic order that works
    T = np.zeros((1, 2, 2), dtype=np.int64)
    T[0, 1, 1] = 1
    d = brute_force_decompose(GF2, T, 1)
    assert d.B.tolist() == [[0, 1]] and d.C.tolist() == [[0, 1]]


def test_rank1_wildcard_examples():
    vecs = brute_force_rank1_wildcard(GF2, np.full((2, 2, 2), WILDCARD))
    assert all(not v.any() for v in vecs)
    W = np.full((2, 2, 2), WILDCARD)
    W[0, 0, 0] = W[1, 1, 1] = 1
    W[0, 1, 1] = 0
    assert brute_force_rank1_wildcard(GF2, W) is None
    vecs = brute_force_rank1_wildcard(GF2, np.ones((2, 3), dtype=np.int64))
    assert vecs[0].tolist() == [1, 1] and vecs[1].tolist() == [1, 1, 1]


def test_rank1_wildcard_budget():
    with pytest.raises(BudgetExhausted):
        brute_force_rank1_wildcard(GF3, np.full((3, 3, 3), WILDCARD), budget=100)


def test_rank2_identity():
    sols = list(enumerate_rank2_decompositions(GF2, identity_gadget()))
    assert len(sols) == 2
    got = {(d.A.tobytes(), d.B.tobytes(), d.C.tobytes()) for d in sols}
    F = np.eye(2, dtype=np.int64)
    G = F[::-1].copy()
    assert got == {(F.tobytes(),) * 3, (G.tobytes(),) * 3}


def test_rank2_zero_tensor_includes_zero():
    sols = list(enumerate_rank2_decompositions(GF2, np.zeros((2, 2, 2), dtype=np.int64)))
    assert any(not (d.A.any() or d.B.any() or d.C.any()) for d in sols)
    for d in sols:
        assert not evaluate(GF2, d).any()


def test_rank2_counts_match_naive():
    """Direct sextuple scan on a few 2x1x2 tensors."""
    rng = np.random.default_rng(5)
    vecs = {d: [np.array(v) for v in itertools.product((0, 1), repeat=d)] for d in (1, 2)}
    for _ in range(5):
        W = rng.integers(-1, 2, (2, 1, 2))
        naive = 0
        for a, a2, c, c2 in itertools.product(vecs[2], repeat=4):
            for b, b2 in itertools.product(vecs[1], repeat=2):
                T = (np.einsum("i,j,k->ijk", a, b, c) + np.einsum("i,j,k->ijk", a2, b2, c2)) % 2
                naive += np.array_equal(T[W >= 0], W[W >= 0])
        assert naive == sum(1 for _ in enumerate_rank2_decompositions(GF2, W))


def test_rank2_rejects_other_fields():
    with pytest.raises(ValueError):
        list(enumerate_rank2_decompositions(GF3, identity_gadget()))


def test_rank2_budget():
    with pytest.raises(BudgetExhausted):
        list(enumerate_rank2_decompositions(GF2, np.full((4, 4, 4), WILDCARD), budget=10))
