"""Exact dense linear algebra over a :class:`~ffdecomp.field.GF`.

Matrices are 2-D ``int64`` numpy arrays of field elements.  Every function
takes the field as its first argument and never mutates its inputs.
Rank-0 factorizations use ``m x 0`` / ``0 x n`` arrays so that ``C @ F == M``
stays literally true.
"""

from __future__ import annotations

import functools
import itertools
from typing import Iterator

import numpy as np

from .field import GF


def zeros(m: int, n: int) -> np.ndarray:
    return np.zeros((m, n), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def _as_mat(M) -> np.ndarray:
    M = np.array(M, dtype=np.int64)
    if M.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {M.shape}")
    return M


def rref_with_transform(gf: GF, M) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Jordan elimination.

    Returns ``(R, T)`` with ``T`` invertible (``m x m``), ``T @ M == R`` and
    ``R`` in reduced row echelon form.
    """
    R, T, _ = _rref(gf, M)
    return R, T


def _rref(gf: GF, M) -> tuple[np.ndarray, np.ndarray, list[int]]:
    R = _as_mat(M)
    m, n = R.shape
    T = identity(m)
    pivots: list[int] = []
    r = 0
    for j in range(n):
        if r == m:
            break
        nz = np.flatnonzero(R[r:, j])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
            T[[r, i]] = T[[i, r]]
        sigma = int(R[r, j])
        if sigma != 1:
            s_inv = gf.inv(sigma)
            R[r] = gf.mul(R[r], s_inv)
            T[r] = gf.mul(T[r], s_inv)
        factors = R[:, j].copy()
        factors[r] = 0
        rows = np.flatnonzero(factors)
        if rows.size:
            f = factors[rows, None]
            R[rows] = gf.sub(R[rows], gf.mul(f, R[r][None, :]))
            T[rows] = gf.sub(T[rows], gf.mul(f, T[r][None, :]))
        pivots.append(j)
        r += 1
    return R, T, pivots


def rref(gf: GF, M) -> np.ndarray:
    return _rref(gf, M)[0]


def pivot_columns(gf: GF, M) -> list[int]:
    return _rref(gf, M)[2]


def rank(gf: GF, M) -> int:
    M = _as_mat(M)
    if M.shape[0] > M.shape[1]:
        M = M.T
    return len(_rref(gf, M)[2])


def inverse(gf: GF, M) -> np.ndarray:
    M = _as_mat(M)
    if M.shape[0] != M.shape[1]:
        raise ValueError("inverse of a non-square matrix")
    R, T, piv = _rref(gf, M)
    if len(piv) != M.shape[0]:
        raise ZeroDivisionError("matrix is singular")
    return T


def rank_factorize_bounded(gf: GF, M, bound: int) -> tuple[np.ndarray, np.ndarray] | None:
    """Rank factorization that gives up once the rank exceeds ``bound``.

    Runs forward elimination on ``F`` (initially ``M``) while keeping
    ``C @ F == M`` with ``C`` initially the identity; every row operation on
    ``F`` is mirrored by the inverse column operation on ``C``.  Returns
    ``(C[:, :r], F[:r])`` with ``r = rank(M) <= bound``, or ``None`` as soon
    as an elimination step would produce pivot number ``bound + 1``.
    """
    F = _as_mat(M)
    m, n = F.shape
    C = identity(m)
    r = 0
    for j in range(n):
        if r == m:
            break
        nz = np.flatnonzero(F[r:, j])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            F[[r, i]] = F[[i, r]]
            C[:, [r, i]] = C[:, [i, r]]
        sigma = int(F[r, j])
        if sigma != 1:
            F[r] = gf.mul(F[r], gf.inv(sigma))
            C[:, r] = gf.mul(C[:, r], sigma)
        s = F[r + 1 :, j].copy()
        rows = np.flatnonzero(s)
        if rows.size:
            s = s[rows]
            idx = r + 1 + rows
            F[idx] = gf.sub(F[idx], gf.mul(s[:, None], F[r][None, :]))
            C[:, r] = gf.add(C[:, r], gf.matmul(C[:, idx], s[:, None])[:, 0])
        r += 1
        if r > bound:
            return None
    return C[:, :r].copy(), F[:r].copy()


def full_rank_factorize(gf: GF, M) -> tuple[np.ndarray, np.ndarray]:
    """``(C0, F0)`` with ``F0`` the nonzero rows of ``rref(M)`` and ``C0 @ F0 == M``."""
    R, T, piv = _rref(gf, M)
    r = len(piv)
    if r == 0:
        raise ValueError("zero matrix has no full-rank factorization")
    T_inv = inverse(gf, T)
    return T_inv[:, :r].copy(), R[:r].copy()


def _det_adj(gf: GF, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Determinants and adjugates of a stack of ``r x r`` matrices, ``r <= 3``."""
    r = X.shape[-1]
    mul, sub, add = gf.mul, gf.sub, gf.add
    if r == 1:
        return X[:, 0, 0], np.ones_like(X)
    if r == 2:
        a, b, c, d = X[:, 0, 0], X[:, 0, 1], X[:, 1, 0], X[:, 1, 1]
        det = sub(mul(a, d), mul(b, c))
        adj = np.stack([np.stack([d, gf.neg(b)], -1), np.stack([gf.neg(c), a], -1)], -2)
        return det, adj
    cof = np.empty_like(X)
    for i in range(3):
        for j in range(3):
            i0, i1 = [t for t in range(3) if t != i]
            j0, j1 = [t for t in range(3) if t != j]
            minor = sub(mul(X[:, i0, j0], X[:, i1, j1]), mul(X[:, i0, j1], X[:, i1, j0]))
            cof[:, i, j] = minor if (i + j) % 2 == 0 else gf.neg(minor)
    det = add(add(mul(X[:, 0, 0], cof[:, 0, 0]), mul(X[:, 0, 1], cof[:, 0, 1])),
              mul(X[:, 0, 2], cof[:, 0, 2]))
    return det, np.ascontiguousarray(np.transpose(cof, (0, 2, 1)))


@functools.lru_cache(maxsize=None)
def _gl_with_inverses(gf: GF, r: int) -> tuple[np.ndarray, np.ndarray]:
    if r == 0:
        X = np.zeros((1, 0, 0), dtype=np.int64)
        return X, X
    if r > 3:
        Xs = np.array(
            [X for X in (np.array(f).reshape(r, r)
                         for f in itertools.product(range(gf.q), repeat=r * r))
             if rank(gf, X) == r],
            dtype=np.int64,
        )
        invs = np.array([inverse(gf, X) for X in Xs], dtype=np.int64)
    else:
        allm = np.array(list(itertools.product(range(gf.q), repeat=r * r)), dtype=np.int64)
        allm = allm.reshape(-1, r, r)
        det, adj = _det_adj(gf, allm)
        keep = det != 0
        Xs = allm[keep]
        invs = gf.mul(adj[keep], gf.inv(det[keep])[:, None, None])
    Xs.flags.writeable = False
    invs.flags.writeable = False
    return Xs, invs


def enumerate_gl(gf: GF, r: int) -> Iterator[np.ndarray]:
    """Every invertible ``r x r`` matrix, once each, in lexicographic order
    of the flattened entries (all ``q**(r*r)`` matrices filtered by
    nonzero determinant)."""
    return iter(_gl_with_inverses(gf, r)[0])


def gl_stack(gf: GF, r: int) -> tuple[np.ndarray, np.ndarray]:
    """``(Xs, Xs_inv)``: :func:`enumerate_gl` as one array, with inverses."""
    return _gl_with_inverses(gf, r)


def gl_order(q: int, r: int) -> int:
    out = 1
    for i in range(r):
        out *= q**r - q**i
    return out


def enumerate_full_rank_factorizations(gf: GF, M) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """All ``(C0 X, X^-1 F0)`` for ``X`` in ``GL_r``, where ``r = rank(M) >= 1``."""
    C0, F0 = full_rank_factorize(gf, M)
    for X, X_inv in zip(*gl_stack(gf, C0.shape[1])):
        yield gf.matmul(C0, X), gf.matmul(X_inv, F0)


def solve_linear(gf: GF, A, B) -> np.ndarray | None:
    """Solve ``A @ X == B``; free variables are set to 0.  ``None`` if inconsistent."""
    A = _as_mat(A)
    B = _as_mat(B)
    if A.shape[0] != B.shape[0]:
        raise ValueError(f"row mismatch: {A.shape} vs {B.shape}")
    R, T, piv = _rref(gf, A)
    TB = gf.matmul(T, B)
    r = len(piv)
    if np.any(TB[r:]):
        return None
    X = zeros(A.shape[1], B.shape[1])
    X[piv] = TB[:r]
    return X


def solve_linear_right(gf: GF, A, B) -> np.ndarray | None:
    """Solve ``X @ A == B`` by transposing."""
    X = solve_linear(gf, _as_mat(A).T, _as_mat(B).T)
    return None if X is None else X.T.copy()


@functools.lru_cache(maxsize=None)
def _full_rank_coefficients(gf: GF, rows: int, cols: int) -> np.ndarray:
    """Every ``rows x cols`` matrix of rank ``rows``, stacked, lexicographic."""
    out = []
    for flat in itertools.product(range(gf.q), repeat=rows * cols):
        G = np.array(flat, dtype=np.int64).reshape(rows, cols)
        if rank(gf, G) == rows:
            out.append(G)
    arr = np.array(out, dtype=np.int64).reshape(-1, rows, cols)
    arr.flags.writeable = False
    return arr


def candidate_left_factors(gf: GF, D, r: int) -> np.ndarray:
    """All ``U`` (``m x r``) with ``rank(U) == rank(D)`` that admit ``U @ V == D``.

    With ``D = U* V*`` a full-rank factorization these are ``U* G`` for
    ``G`` of shape ``rank(D) x r``; since ``U*`` has independent columns,
    ``rank(U* G) == rank(G)``, so only full-rank ``G`` are kept.  Returned
    stacked as an array of shape ``(count, m, r)``.
    """
    U_star, _ = full_rank_factorize(gf, D)
    rp = U_star.shape[1]
    if r < rp:
        return np.zeros((0, U_star.shape[0], r), dtype=np.int64)
    G = _full_rank_coefficients(gf, rp, r)
    return gf.matmul(U_star[None, :, :], G)


def candidate_right_factors(gf: GF, D, r: int) -> np.ndarray:
    """Transposed :func:`candidate_left_factors`: all ``V = G V*`` of rank ``rank(D)``."""
    U = candidate_left_factors(gf, _as_mat(D).T, r)
    return np.ascontiguousarray(np.transpose(U, (0, 2, 1)))


def outer(gf: GF, u, v) -> np.ndarray:
    return gf.mul(np.asarray(u, dtype=np.int64)[:, None], np.asarray(v, dtype=np.int64)[None, :])
