"""Rank-1 decomposition when some cells are wildcards.

A wildcard tensor or matrix is an integer array whose entries are field
elements or :data:`WILDCARD` (``-1``).  Only fixed cells constrain the
solution.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .field import GF

WILDCARD = -1


def as_wild(W, gf: GF | None = None) -> np.ndarray:
    W = np.asarray(W, dtype=np.int64)
    if gf is not None and W.size and (W.min() < WILDCARD or W.max() >= gf.q):
        raise ValueError(f"cells must be {WILDCARD} or in 0..{gf.q - 1}")
    return W


def verify_rank1(gf: GF, W, vectors) -> bool:
    """True iff every fixed cell equals the product of the matching vector entries."""
    W = as_wild(W)
    vectors = [np.asarray(v, dtype=np.int64) for v in vectors]
    if len(vectors) != W.ndim or any(len(v) != s for v, s in zip(vectors, W.shape)):
        return False
    prod = np.ones((1,) * W.ndim, dtype=np.int64)
    for axis, v in enumerate(vectors):
        shape = [1] * W.ndim
        shape[axis] = len(v)
        prod = gf.mul(prod, v.reshape(shape))
    fixed = W != WILDCARD
    return bool(np.array_equal(np.broadcast_to(prod, W.shape)[fixed], W[fixed]))


def rank1_wildcard_gf2(gf: GF, W) -> tuple[np.ndarray, np.ndarray, np.ndarray] | None:
    """GF(2) only: each vector entry is the OR of the fixed values in its slice.

    That is the smallest support forced by the 1-cells, so it is the only
    candidate worth checking.
    """
    if gf.q != 2:
        raise ValueError("the OR construction needs GF(2)")
    W = as_wild(W, gf)
    ones = W == 1
    a = ones.any(axis=(1, 2)).astype(np.int64)
    b = ones.any(axis=(0, 2)).astype(np.int64)
    c = ones.any(axis=(0, 1)).astype(np.int64)
    return (a, b, c) if verify_rank1(gf, W, (a, b, c)) else None


@dataclass
class ModSystem:
    """``coeffs @ x == rhs (mod modulus)``."""

    modulus: int
    coeffs: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        self.rhs = np.asarray(self.rhs, dtype=np.int64).reshape(-1) % self.modulus
        coeffs = np.asarray(self.coeffs, dtype=np.int64)
        if coeffs.ndim != 2 or coeffs.shape[0] != len(self.rhs):
            raise ValueError("coeffs must be a matrix with one row per right-hand side")
        self.coeffs = coeffs % self.modulus

    @property
    def n_vars(self) -> int:
        return self.coeffs.shape[1]

    def satisfied_by(self, x) -> bool:
        x = np.asarray(x, dtype=np.int64)
        return bool(np.all((self.coeffs @ x - self.rhs) % self.modulus == 0))


def _unit_multiplier(a: int, N: int) -> tuple[int, int]:
    """``(u, g)`` with ``u`` a unit mod ``N`` and ``u * a == g == gcd(a, N) (mod N)``."""
    g = math.gcd(a, N)
    m = N // g
    u = pow(a // g, -1, m) if m > 1 else 1
    while math.gcd(u, N) != 1:
        u += m
    return u, g


def solve_mod_system(system: ModSystem) -> np.ndarray | None:
    """Any solution of a linear system over ``Z/NZ``, or ``None``.

    Elimination uses unimodular 2x2 row combinations from the extended gcd,
    scales each pivot to a divisor ``g`` of ``N`` and feeds ``(N/g) * row``
    back into the remaining rows (the Howell-form closure), so that
    back-substitution with free variables at 0 never gets stuck on a
    consistent system.
    """
    N = system.modulus
    n = system.n_vars
    if N == 1:
        return np.zeros(n, dtype=np.int64)
    pool = [[int(v) for v in row] + [int(r)] for row, r in zip(system.coeffs, system.rhs)]
    echelon: list[tuple[int, list[int]]] = []
    for c in range(n):
        hits = [row for row in pool if row[c] % N]
        rest = [row for row in pool if not row[c] % N]
        if not hits:
            continue
        piv = hits[0]
        for other in hits[1:]:
            a, b = piv[c], other[c]
            g, s, t = _ext_gcd(a, b)
            new_piv = [(s * x + t * y) % N for x, y in zip(piv, other)]
            rest.append([((b // g) * x - (a // g) * y) % N for x, y in zip(piv, other)])
            piv = new_piv
        u, g = _unit_multiplier(piv[c], N)
        piv = [u * x % N for x in piv]
        echelon.append((c, piv))
        extra = [(N // g) * x % N for x in piv]
        if any(extra):
            rest.append(extra)
        pool = rest
    if any(row[n] % N for row in pool):
        return None
    x = [0] * n
    for c, row in reversed(echelon):
        val = (row[n] - sum(row[j] * x[j] for j in range(c + 1, n))) % N
        if val % row[c]:
            return None
        x[c] = val // row[c]
    return np.array(x, dtype=np.int64)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b)``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return a, s0, t0


def rank1_wildcard(gf: GF, W) -> tuple[np.ndarray, np.ndarray, np.ndarray] | None:
    """Vectors ``a, b, c`` with ``a[i] b[j] c[k] == W[i, j, k]`` on fixed cells.

    Nonzero cells force their three coordinates to be nonzero; taking
    discrete logs turns those equations into a linear system mod ``q - 1``.
    Coordinates never touched by a nonzero cell are set to 0.
    """
    W = as_wild(W, gf)
    if W.ndim != 3:
        raise ValueError("expected an order-3 wildcard tensor")
    nonzero = W > 0
    I = np.flatnonzero(nonzero.any(axis=(1, 2)))
    J = np.flatnonzero(nonzero.any(axis=(0, 2)))
    K = np.flatnonzero(nonzero.any(axis=(0, 1)))
    if np.any(W[np.ix_(I, J, K)] == 0):
        return None

    ia = {int(i): t for t, i in enumerate(I)}
    jb = {int(j): len(I) + t for t, j in enumerate(J)}
    kc = {int(k): len(I) + len(J) + t for t, k in enumerate(K)}
    cells = np.argwhere(nonzero)
    A = np.zeros((len(cells), len(I) + len(J) + len(K)), dtype=np.int64)
    rhs = np.zeros(len(cells), dtype=np.int64)
    for row, (i, j, k) in enumerate(cells):
        A[row, ia[i]] = A[row, jb[j]] = A[row, kc[k]] = 1
        rhs[row] = gf.dlog(int(W[i, j, k]))
    x = solve_mod_system(ModSystem(gf.q - 1, A, rhs))
    if x is None:
        return None

    vectors = [np.zeros(s, dtype=np.int64) for s in W.shape]
    for vec, idx, offset in ((vectors[0], I, 0), (vectors[1], J, len(I)), (vectors[2], K, len(I) + len(J))):
        vec[idx] = gf.pow_primitive(x[offset : offset + len(idx)])
    a, b, c = vectors
    return (a, b, c) if verify_rank1(gf, W, (a, b, c)) else None


def rank1_wildcard_matrix(gf: GF, W) -> tuple[np.ndarray, np.ndarray] | None:
    """Vectors ``a, b`` with ``a[i] b[j] == W[i, j]`` on fixed cells.

    Nonzero cells sharing a row or column form a graph; within a component
    one value fixes all others, so each component is seeded with
    ``a[i0] = 1`` and propagated breadth-first.  Adjacency is read from
    per-row and per-column buckets instead of an explicit edge list.
    """
    W = as_wild(W, gf)
    if W.ndim != 2:
        raise ValueError("expected a wildcard matrix")
    m, n = W.shape
    nonzero = W > 0
    I = nonzero.any(axis=1)
    J = nonzero.any(axis=0)
    if np.any(W[np.ix_(I, J)] == 0):
        return None

    by_row: list[list[int]] = [np.flatnonzero(nonzero[i]).tolist() for i in range(m)]
    by_col: list[list[int]] = [np.flatnonzero(nonzero[:, j]).tolist() for j in range(n)]
    a: list[int | None] = [None] * m
    b: list[int | None] = [None] * n
    visited = np.zeros_like(nonzero)

    for i0, j0 in np.argwhere(nonzero):
        if visited[i0, j0]:
            continue
        a[i0] = 1
        b[j0] = int(W[i0, j0])
        visited[i0, j0] = True
        queue = deque([(int(i0), int(j0))])
        while queue:
            i, j = queue.popleft()
            for j2 in by_row[i]:
                val = gf.div(int(W[i, j2]), a[i])
                if b[j2] is None:
                    b[j2] = val
                elif b[j2] != val:
                    return None
                if not visited[i, j2]:
                    visited[i, j2] = True
                    queue.append((i, j2))
            for i2 in by_col[j]:
                val = gf.div(int(W[i2, j]), b[j])
                if a[i2] is None:
                    a[i2] = val
                elif a[i2] != val:
                    return None
                if not visited[i2, j]:
                    visited[i2, j] = True
                    queue.append((i2, j))

    av = np.array([0 if v is None else v for v in a], dtype=np.int64)
    bv = np.array([0 if v is None else v for v in b], dtype=np.int64)
    return (av, bv) if verify_rank1(gf, W, (av, bv)) else None
