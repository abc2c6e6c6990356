"""Brute-force references for testing.

Nothing here calls the solvers it is meant to check: only field arithmetic
and plain numpy are used.  Every search checks its size against a budget
first and raises :class:`~ffdecomp.budget.BudgetExhausted` rather than
truncating.
"""

from __future__ import annotations

import functools
import itertools
from typing import Iterator

import numpy as np

from .budget import Budget, as_budget
from .field import GF, all_vectors
from .tensor import Decomposition
from .wildcard import WILDCARD

DEFAULT_LIMIT = 10**8


def _budget(budget) -> Budget:
    return as_budget(DEFAULT_LIMIT if budget is None else budget)


def brute_force_decompose(gf: GF, T, R: int, budget: Budget | int | None = None) -> Decomposition | None:
    """First ``(B, C)`` in lexicographic order for which ``A`` exists.

    For fixed ``B, C`` the tensor is linear in ``A``: slice ``i`` must be
    ``sum_r A[r, i] B_r (x) C_r``, so every coefficient vector in ``F^R`` is
    tried for every slice at once.
    """
    T = np.asarray(T, dtype=np.int64)
    p, q, s = T.shape
    budget = _budget(budget)
    budget.check(gf.q ** (R * (q + s)))
    flat = T.reshape(p, q * s)
    if R == 0:
        return Decomposition.zero(0, T.shape) if not flat.any() else None

    coeffs = all_vectors(gf, R)  # (q^R, R)
    Bs = all_vectors(gf, R * q).reshape(-1, R, q)
    Cs = all_vectors(gf, R * s).reshape(-1, R, s)
    for B in Bs:
        budget.spend(len(Cs))
        # K[c, r] = B_r (x) C_r flattened, for every C at once
        K = gf.mul(B[None, :, :, None], Cs[:, :, None, :]).reshape(len(Cs), R, q * s)
        combos = gf.sum(gf.mul(coeffs[None, :, :, None], K[:, None, :, :]), axis=2)
        # match[c, t, i]: coefficient vector t reproduces slice i
        match = np.all(combos[:, :, None, :] == flat[None, None, :, :], axis=3)
        good = np.flatnonzero(match.any(axis=1).all(axis=1))
        if good.size:
            c = good[0]
            A = coeffs[np.argmax(match[c], axis=0)].T
            return Decomposition(A, B.copy(), Cs[c].copy())
    return None


@functools.lru_cache(maxsize=None)
def _rank1_table(gf: GF, dims: tuple[int, ...]) -> tuple[np.ndarray, tuple[np.ndarray, ...]]:
    """Outer products of every vector tuple, flattened, in lexicographic order."""
    axes = [all_vectors(gf, d) for d in dims]
    prods = axes[0]
    for ax in axes[1:]:
        prods = gf.mul(prods[:, None, :, None], ax[None, :, None, :]).reshape(
            prods.shape[0] * ax.shape[0], -1
        )
    prods.flags.writeable = False
    return prods, tuple(axes)


def brute_force_rank1_wildcard(gf: GF, W, budget: Budget | int | None = None):
    """First vector tuple (lexicographic) whose outer product matches every fixed cell."""
    W = np.asarray(W, dtype=np.int64)
    dims = W.shape
    total = gf.q ** sum(dims)
    _budget(budget).spend(total)
    prods, axes = _rank1_table(gf, dims)
    fixed = (W != WILDCARD).ravel()
    ok = np.all(prods[:, fixed] == W.ravel()[fixed], axis=1)
    hits = np.flatnonzero(ok)
    if not hits.size:
        return None
    idx = np.unravel_index(hits[0], [len(a) for a in axes])
    return tuple(a[i].copy() for a, i in zip(axes, idx))


def enumerate_rank2_decompositions(gf: GF, W, budget: Budget | int | None = None) -> Iterator[Decomposition]:
    """Every rank-2 decomposition over GF(2) consistent with the fixed cells.

    ``W`` may be a plain tensor or contain wildcards.  All ``(a, a', b, b')``
    are scanned; for each, cell ``(i, j, k)`` only involves ``(c_k, c'_k)``,
    so the four choices of that pair are checked coordinate by coordinate
    and every consistent combination is yielded.
    """
    if gf.q != 2:
        raise ValueError("rank-2 enumeration is implemented for GF(2) only")
    W = np.asarray(W, dtype=np.int64)
    p, q, s = W.shape
    _budget(budget).spend(2 ** (2 * (p + q + s)))
    fixed = W != WILDCARD

    ab = all_vectors(gf, 2 * p + 2 * q)
    a, a2 = ab[:, :p], ab[:, p : 2 * p]
    b, b2 = ab[:, 2 * p : 2 * p + q], ab[:, 2 * p + q :]
    P = (a[:, :, None] * b[:, None, :]).reshape(len(ab), -1)
    P2 = (a2[:, :, None] * b2[:, None, :]).reshape(len(ab), -1)
    options = np.array(list(itertools.product((0, 1), repeat=2)))  # (c_k, c'_k)

    ok = np.zeros((len(ab), s, 4), dtype=bool)
    for k in range(s):
        mask = fixed[:, :, k].ravel()
        target = W[:, :, k].ravel()[mask]
        for o, (c, c2) in enumerate(options):
            vals = (P[:, mask] * c + P2[:, mask] * c2) % 2
            ok[:, k, o] = np.all(vals == target, axis=1)
    alive = np.flatnonzero(ok.any(axis=2).all(axis=1))
    for t in alive:
        choices = [np.flatnonzero(ok[t, k]) for k in range(s)]
        for pick in itertools.product(*choices):
            c = options[list(pick), 0] if s else np.zeros(0, np.int64)
            c2 = options[list(pick), 1] if s else np.zeros(0, np.int64)
            yield Decomposition(
                np.stack([a[t], a2[t]]), np.stack([b[t], b2[t]]), np.stack([c, c2]).reshape(2, s)
            )
