"""Rank-R (R <= 4) decomposition of order-3 tensors over a finite field.

Outline of :func:`decompose`:

1. Factor the flattened slices ``T~ = Cs @ Fs`` with rank at most ``R``; the
   ``J`` rows of ``Fs`` are a basis ``T'`` of the slice space.  More than ``R``
   independent slices means there is no decomposition.
2. Every decomposition of ``T'`` has the form ``T'_j = sum_r A'[r, j] M_r``
   with ``rank(M_r) <= 1``.  Writing ``A'^T = G^-1 E`` with ``E`` in rref and
   ``G`` invertible turns the system into ``D_i = sum_r E[i, r] M_r`` where
   ``D = G T'``.  Rank-deficient ``A'`` never work because the ``T'_j`` are
   independent, so the candidates are exactly the pairs ``(E, G)``.
3. ``E`` splits into connected components of shared support, each of which
   is one of three shapes (single row, rows sharing one column, two rows
   sharing two columns) with its own solver.
4. A solution ``M_r = B_r (x) C_r`` is lifted back with ``A = A' Cs^T``.

``G`` is built row by row and rows of ``D`` that violate the rank
precondition ``rank(D_i) <= |S_i|`` are pruned as soon as they are chosen;
each component is solved as soon as all its rows are fixed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

import numpy as np

from .budget import Budget, as_budget
from .field import GF, all_vectors
from .matrix import (
    candidate_left_factors,
    candidate_right_factors,
    gl_stack,
    inverse,
    outer,
    rank_factorize_bounded,
    solve_linear,
    solve_linear_right,
)
from .tensor import Decomposition, evaluate, flatten_slices, rank1_split

MAX_RANK = 4


class UnexpectedForm(RuntimeError):
    """A coefficient component matched none of the known shapes."""


# ---------------------------------------------------------------------------
# Case tags
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SingleRow:
    pass


@dataclass(frozen=True)
class CommonColumn:
    column: int


@dataclass(frozen=True)
class TwoCommonColumns:
    """Rows ``D0 = M_a + w M_c + x M_d`` and ``D1 = M_b + y M_c + z M_d``."""

    a: int
    b: int
    c: int
    d: int
    w: int
    x: int
    y: int
    z: int


@dataclass
class ReducedSystem:
    """``D[i] = sum_{r in supports[i]} E[i, r] M_r`` with ``E`` in rref, no zero rows."""

    E: np.ndarray
    D: list[np.ndarray]
    supports: list[tuple[int, ...]] = dc_field(default_factory=list)

    def __post_init__(self):
        if not self.supports:
            self.supports = [tuple(int(c) for c in np.flatnonzero(row)) for row in self.E]


def supports_of(E) -> list[tuple[int, ...]]:
    return [tuple(int(c) for c in np.flatnonzero(row)) for row in np.asarray(E)]


def separate_components(supports) -> list[tuple[list[int], list[int]]]:
    """Group rows connected through shared support columns.

    Returns ``(rows, columns)`` pairs ordered by their first row.
    """
    n = len(supports)
    sets = [set(s) for s in supports]
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        queue = [start]
        rows = []
        while queue:
            i = queue.pop(0)
            rows.append(i)
            for j in range(n):
                if not seen[j] and sets[i] & sets[j]:
                    seen[j] = True
                    queue.append(j)
        rows.sort()
        cols = sorted(set().union(*(sets[i] for i in rows)))
        out.append((rows, cols))
    return out


def classify_component(E, rows) -> SingleRow | CommonColumn | TwoCommonColumns:
    E = np.asarray(E)
    sup = [set(np.flatnonzero(E[i]).tolist()) for i in rows]
    if any(not s for s in sup):
        raise UnexpectedForm("component contains a zero row")
    if len(rows) == 1:
        return SingleRow()
    inter = {frozenset(s & t) for s, t in itertools.combinations(sup, 2)}
    if len(inter) == 1:
        (common,) = inter
        if len(common) == 1:
            return CommonColumn(next(iter(common)))
        if len(common) == 2 and len(rows) == 2 and len(sup[0]) == len(sup[1]) == 3:
            c, d = sorted(common)
            (a,) = sup[0] - common
            (b,) = sup[1] - common
            i0, i1 = rows
            return TwoCommonColumns(
                a, b, c, d, int(E[i0, c]), int(E[i0, d]), int(E[i1, c]), int(E[i1, d])
            )
    raise UnexpectedForm(f"unrecognised coefficient component {E[list(rows)].tolist()}")


def rref_forms(gf: GF, J: int, R: int):
    """Every ``J x R`` rref matrix with ``J`` nonzero rows."""
    for pivots in itertools.combinations(range(R), J):
        free = [
            [c for c in range(pivots[t] + 1, R) if c not in pivots] for t in range(J)
        ]
        slots = [(t, c) for t in range(J) for c in free[t]]
        for vals in itertools.product(range(gf.q), repeat=len(slots)):
            E = np.zeros((J, R), dtype=np.int64)
            for t, p in enumerate(pivots):
                E[t, p] = 1
            for (t, c), v in zip(slots, vals):
                E[t, c] = v
            yield E


_DIFFICULTY = {SingleRow: 0, CommonColumn: 1, TwoCommonColumns: 2}


def _bounded_rank(gf: GF, M, bound: int) -> int:
    """``rank(M)`` if it is at most ``bound``, else ``bound + 1``."""
    fac = rank_factorize_bounded(gf, M, bound)
    return bound + 1 if fac is None else fac[0].shape[1]


def _zero_like(D: np.ndarray) -> np.ndarray:
    return np.zeros_like(D)


# ---------------------------------------------------------------------------
# Component solvers.  Rows are ``(coeffs, D)`` with ``coeffs`` mapping a
# variable index to its nonzero coefficient; solutions map variables to
# matrices of rank <= 1.
# ---------------------------------------------------------------------------


def solve_single_row(gf: GF, coeffs: dict[int, int], D) -> dict[int, np.ndarray] | None:
    """Solve ``D = sum_r coeffs[r] M_r``; exists iff ``rank(D) <= len(coeffs)``."""
    D = np.asarray(D, dtype=np.int64)
    variables = sorted(coeffs)
    fac = rank_factorize_bounded(gf, D, len(variables))
    if fac is None:
        return None
    X, Y = fac
    out = {}
    for t, r in enumerate(variables):
        if t < X.shape[1]:
            out[r] = gf.mul(outer(gf, X[:, t], Y[t]), gf.inv(coeffs[r]))
        else:
            out[r] = _zero_like(D)
    return out


def _designated_parts(gf: GF, D: np.ndarray, r: int):
    """Distinct ``u_t v_t`` over all full-rank factorizations ``D = U V``
    (``rank(D) == r``), for any fixed column ``t``.

    With ``D = U0 V0`` one factorization, the others are ``(U0 X, X^-1 V0)``;
    column ``t`` contributes ``(U0 x)(y V0)`` where ``x = X[:, t]`` and
    ``y = X^-1[t, :]``, and the reachable ``(x, y)`` are exactly the pairs
    with ``y . x == 1``.  Scaling ``x`` by ``c`` and ``y`` by ``1/c`` gives
    the same product, so ``x`` is normalized to a leading 1.
    """
    U0, V0 = rank_factorize_bounded(gf, D, r)
    vecs = all_vectors(gf, r)[1:]
    lead = vecs[np.arange(len(vecs)), np.argmax(vecs != 0, axis=1)]
    xs = vecs[lead == 1]
    for x in xs:
        dots = gf.sum(gf.mul(vecs, x[None, :]), axis=1)
        u = gf.matmul(U0, x[:, None])[:, 0]
        for y in vecs[dots == 1]:
            yield outer(gf, u, gf.matmul(y[None, :], V0)[0])


def solve_common_column(
    gf: GF, rows: list[tuple[dict[int, int], np.ndarray]], r_star: int, budget: Budget | None = None
) -> dict[int, np.ndarray] | None:
    """Rows whose supports pairwise meet exactly in ``{r_star}``."""
    budget = as_budget(budget)
    ranks = []
    for coeffs, D in rows:
        rk = _bounded_rank(gf, D, len(coeffs))
        if rk > len(coeffs):
            return None
        ranks.append(rk)

    def finish(M_star: np.ndarray) -> dict[int, np.ndarray] | None:
        out = {r_star: M_star}
        for coeffs, D in rows:
            rest = {r: c for r, c in coeffs.items() if r != r_star}
            residual = gf.sub(D, gf.mul(M_star, coeffs[r_star]))
            sol = solve_single_row(gf, rest, residual)
            if sol is None:
                return None
            out.update(sol)
        return out

    tight = next((i for i, (c, _) in enumerate(rows) if ranks[i] == len(c)), None)
    if tight is None:
        return finish(_zero_like(rows[0][1]))

    coeffs_t, D_t = rows[tight]
    scale = gf.inv(coeffs_t[r_star])
    for part in _designated_parts(gf, D_t, len(coeffs_t)):
        budget.spend()
        M_star = gf.mul(part, scale)
        ok = True
        for i, (coeffs, D) in enumerate(rows):
            if i == tight:
                continue
            residual = gf.sub(D, gf.mul(M_star, coeffs[r_star]))
            if _bounded_rank(gf, residual, len(coeffs) - 1) > len(coeffs) - 1:
                ok = False
                break
        if ok:
            sol = finish(M_star)
            if sol is not None:
                return sol
    return None


def _fit_row(gf: GF, res: np.ndarray, u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Batched: find ``v`` with ``outer(u, v) == res``.

    ``res`` has shape ``(K, n, m)``; ``u`` is ``(n,)`` or ``(K, n)``.
    Returns ``(ok, v)`` with shapes ``(K,)`` and ``(K, m)``.
    """
    K = res.shape[0]
    u = np.broadcast_to(u, (K, res.shape[1]))
    nz = u != 0
    has = nz.any(axis=1)
    i0 = np.argmax(nz, axis=1)
    piv = u[np.arange(K), i0]
    v = gf.mul(res[np.arange(K), i0, :], gf.inv(np.where(has, piv, 1))[:, None])
    v = np.where(has[:, None], v, 0)
    ok = np.all(gf.mul(u[:, :, None], v[:, None, :]) == res, axis=(1, 2))
    return ok, v


def _fit_col(gf: GF, res: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Batched: find ``u`` with ``outer(u, v) == res``."""
    return _fit_row(gf, np.transpose(res, (0, 2, 1)), v)


def _rank_le1_batch(gf: GF, res: np.ndarray) -> np.ndarray:
    """Batched ``rank(res[k]) <= 1``."""
    K, n, m = res.shape
    flat = res.reshape(K, -1)
    nz = flat != 0
    has = nz.any(axis=1)
    idx = np.argmax(nz, axis=1)
    i0, j0 = np.divmod(idx, m)
    col = res[np.arange(K), :, j0]
    row = res[np.arange(K), i0, :]
    piv = flat[np.arange(K), idx]
    row = gf.mul(row, gf.inv(np.where(has, piv, 1))[:, None])
    return ~has | np.all(gf.mul(col[:, :, None], row[:, None, :]) == res, axis=(1, 2))


def _batched_outer(gf: GF, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return gf.mul(u[..., :, None], v[..., None, :])


_CHUNK = 4096


def _normalized_gl3(gf: GF) -> tuple[np.ndarray, np.ndarray]:
    """``GL_3`` modulo column scaling: columns have a leading 1."""
    Xs, Xinv = gl_stack(gf, 3)
    cols = np.transpose(Xs, (0, 2, 1))
    lead = np.take_along_axis(cols, np.argmax(cols != 0, axis=2)[..., None], axis=2)[..., 0]
    keep = np.all(lead == 1, axis=1)
    return Xs[keep], Xinv[keep]


def _solve_rank3_branch(gf, Dfac, Dother, coef2, coef3, budget):
    """``Dfac = M_first + M2 + coef3' M3`` has rank 3; returns ``(M_first, M2, M3, M_other)``
    where ``M_other = Dother - M2 - coef3 M3`` must have rank <= 1.

    The full-rank factorizations of ``Dfac`` fix its three terms; term 1 is
    ``M2`` and term 2 is ``coef2 * M3``.
    """
    U0, V0 = rank_factorize_bounded(gf, Dfac, 3)
    Xs, Xinv = _normalized_gl3(gf)
    for start in range(0, len(Xs), _CHUNK):
        X = Xs[start : start + _CHUNK]
        Xi = Xinv[start : start + _CHUNK]
        budget.spend(len(X))
        U = gf.matmul(U0[None], X)
        V = gf.matmul(Xi, V0[None])
        M2 = _batched_outer(gf, U[:, :, 1], V[:, 1, :])
        M3 = gf.mul(_batched_outer(gf, U[:, :, 2], V[:, 2, :]), gf.inv(coef2))
        other = gf.sub(gf.sub(Dother[None], M2), gf.mul(M3, coef3))
        ok = np.flatnonzero(_rank_le1_batch(gf, other))
        if ok.size:
            k = ok[0]
            first = _batched_outer(gf, U[k, :, 0], V[k, 0, :])
            return first, M2[k], M3[k], other[k]
    return None


def _two_terms(gf: GF, D: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``D = P0 + P1`` with each ``P`` of rank <= 1 (``rank(D) <= 2``)."""
    X, Y = rank_factorize_bounded(gf, D, 2)
    parts = [outer(gf, X[:, t], Y[t]) for t in range(X.shape[1])]
    while len(parts) < 2:
        parts.append(_zero_like(D))
    return parts[0], parts[1]


def _solve_normalized(gf: GF, D0, D1, z: int, budget: Budget):
    """``D0 = M0 + M2 + M3``, ``D1 = M1 + M2 + z M3`` with ``z != 0``."""
    if z == 1:
        rows = [({0: 1, 1: gf.neg(1)}, gf.sub(D0, D1)), ({1: 1, 2: 1, 3: 1}, D1)]
        sol = solve_common_column(gf, rows, 1, budget)
        return None if sol is None else tuple(sol[r] for r in range(4))

    rk0 = _bounded_rank(gf, D0, 3)
    rk1 = _bounded_rank(gf, D1, 3)
    if rk0 > 3 or rk1 > 3:
        return None
    if rk0 == 3:
        found = _solve_rank3_branch(gf, D0, D1, 1, z, budget)
        if found is None:
            return None
        M0, M2, M3, M1 = found
        return M0, M1, M2, M3
    if rk1 == 3:
        found = _solve_rank3_branch(gf, D1, D0, z, 1, budget)
        if found is None:
            return None
        M1, M2, M3, M0 = found
        return M0, M1, M2, M3
    zm1_inv = gf.inv(gf.sub(z, 1))
    if rk0 <= 1:
        P0, P1 = _two_terms(gf, D1)
        M3 = gf.mul(P1, zm1_inv)
        return D0.copy(), P0, gf.neg(M3), M3
    if rk1 <= 1:
        P0, P1 = _two_terms(gf, D0)
        M3 = gf.neg(gf.mul(P1, zm1_inv))
        return P0, D1.copy(), gf.neg(gf.mul(M3, z)), M3
    return _solve_rank2_pair(gf, D0, D1, z, budget)


def _key(*arrays) -> bytes:
    return b"".join(np.ascontiguousarray(a).tobytes() for a in arrays)


def _solve_rank2_pair(gf: GF, D0, D1, z: int, budget: Budget):
    """``rank(D0) == rank(D1) == 2``; with ``M_i = u_i v_i``,
    ``D0 = [u0 u2 u3][v0; v2; v3]`` and ``D1 = [u1 u2 u3][v1; v2; z v3]``.
    In any solution one factor on each side has rank 2, so four families of
    candidate pairs cover every solution."""
    n, m = D0.shape
    z_inv = gf.inv(z)
    U0s = candidate_left_factors(gf, D0, 3)
    U1s = candidate_left_factors(gf, D1, 3)
    V0s = candidate_right_factors(gf, D0, 3)
    V1s = candidate_right_factors(gf, D1, 3)

    def result(u, v):
        return tuple(outer(gf, u[:, t], v[t]) for t in range(4))

    # rank(U0) == rank(U1) == 2: shared columns u2, u3 must agree.
    by_tail: dict[bytes, list[np.ndarray]] = {}
    for U1 in U1s:
        by_tail.setdefault(_key(U1[:, 1:]), []).append(U1)
    zero_col = np.zeros(n, dtype=np.int64)
    for U0 in U0s:
        for U1 in by_tail.get(_key(U0[:, 1:]), ()):
            budget.spend()
            u0, u2, u3 = U0.T
            u1 = U1[:, 0]
            A = np.block([
                [u0[:, None], zero_col[:, None], u2[:, None], u3[:, None]],
                [zero_col[:, None], u1[:, None], u2[:, None], gf.mul(u3, z)[:, None]],
            ])
            V = solve_linear(gf, A, np.vstack([D0, D1]))
            if V is not None:
                return result(np.stack([u0, u1, u2, u3], axis=1), V)

    # rank(V0) == rank(V1) == 2: shared rows v2, v3 must agree.
    by_head: dict[bytes, list[np.ndarray]] = {}
    for V1 in V1s:
        by_head.setdefault(_key(V1[1], V1[2]), []).append(V1)
    zero_row = np.zeros(m, dtype=np.int64)
    for V0 in V0s:
        for V1 in by_head.get(_key(V0[1], gf.mul(V0[2], z)), ()):
            budget.spend()
            v0, v2, v3 = V0
            v1 = V1[0]
            W = np.block([
                [v0, zero_row],
                [zero_row, v1],
                [v2, v2],
                [v3, gf.mul(v3, z)],
            ])
            U = solve_linear_right(gf, W, np.hstack([D0, D1]))
            if U is not None:
                return result(U, np.stack([v0, v1, v2, v3]))

    # rank(U0) == rank(V1) == 2: u1 and v0 remain.
    if len(V1s):
        v1s = V1s[:, 0]
        v2s = V1s[:, 1]
        v3s = gf.mul(V1s[:, 2], z_inv)
        for U0 in U0s:
            budget.spend(len(V1s))
            u0, u2, u3 = U0.T
            common = gf.add(_batched_outer(gf, u2, v2s), _batched_outer(gf, u3, v3s))
            res0 = gf.sub(D0[None], common)
            ok0, v0s = _fit_row(gf, res0, u0)
            if not ok0.any():
                continue
            res1 = gf.sub(D1[None], gf.add(_batched_outer(gf, u2, v2s),
                                           gf.mul(_batched_outer(gf, u3, v3s), z)))
            ok1, u1s = _fit_col(gf, res1, v1s)
            hit = np.flatnonzero(ok0 & ok1)
            if hit.size:
                k = hit[0]
                U = np.stack([u0, u1s[k], u2, u3], axis=1)
                return result(U, np.stack([v0s[k], v1s[k], v2s[k], v3s[k]]))

    # rank(U1) == rank(V0) == 2: u0 and v1 remain.
    if len(V0s):
        v0s = V0s[:, 0]
        v2s = V0s[:, 1]
        v3s = V0s[:, 2]
        for U1 in U1s:
            budget.spend(len(V0s))
            u1, u2, u3 = U1.T
            res0 = gf.sub(D0[None], gf.add(_batched_outer(gf, u2, v2s),
                                           _batched_outer(gf, u3, v3s)))
            ok0, u0s = _fit_col(gf, res0, v0s)
            if not ok0.any():
                continue
            res1 = gf.sub(D1[None], gf.add(_batched_outer(gf, u2, v2s),
                                           gf.mul(_batched_outer(gf, u3, v3s), z)))
            ok1, v1s = _fit_row(gf, res1, u1)
            hit = np.flatnonzero(ok0 & ok1)
            if hit.size:
                k = hit[0]
                U = np.stack([u0s[k], u1, u2, u3], axis=1)
                return result(U, np.stack([v0s[k], v1s[k], v2s[k], v3s[k]]))
    return None


def solve_two_common_columns(
    gf: GF, D0, D1, w: int, x: int, y: int, z: int, budget: Budget | None = None
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray] | None:
    """Solve ``D0 = M0 + w M2 + x M3``, ``D1 = M1 + y M2 + z M3`` with
    ``rank(M_r) <= 1`` and ``w, x, y, z`` all nonzero.

    Rescaling ``M2, M3`` and the second equation reduces to ``w = x = y = 1``.
    """
    if 0 in (w, x, y, z):
        raise ValueError("coefficients must be nonzero")
    budget = as_budget(budget)
    D0 = np.asarray(D0, dtype=np.int64)
    D1 = np.asarray(D1, dtype=np.int64)
    y1 = gf.div(y, w)
    z1 = gf.div(z, x)
    z2 = gf.div(z1, y1)
    sol = _solve_normalized(gf, D0, gf.div(D1, y1), z2, budget)
    if sol is None:
        return None
    M0, M1n, N2, N3 = sol
    return M0, gf.mul(M1n, y1), gf.div(N2, w), gf.div(N3, x)


def _solve_component(gf: GF, E, rows, Ds, tag, budget) -> dict[int, np.ndarray] | None:
    if isinstance(tag, SingleRow):
        (i,) = rows
        coeffs = {int(r): int(E[i, r]) for r in np.flatnonzero(E[i])}
        return solve_single_row(gf, coeffs, Ds[i])
    if isinstance(tag, CommonColumn):
        eqs = [({int(r): int(E[i, r]) for r in np.flatnonzero(E[i])}, Ds[i]) for i in rows]
        return solve_common_column(gf, eqs, tag.column, budget)
    i0, i1 = rows
    sol = solve_two_common_columns(gf, Ds[i0], Ds[i1], tag.w, tag.x, tag.y, tag.z, budget)
    if sol is None:
        return None
    return dict(zip((tag.a, tag.b, tag.c, tag.d), sol))


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------


class _Search:
    """Enumerates ``(E, G)`` for one tensor; holds the per-tensor tables."""

    def __init__(self, gf: GF, slices: np.ndarray, R: int, budget: Budget):
        self.gf = gf
        self.R = R
        self.budget = budget
        J = slices.shape[0]
        self.J = J
        self.vecs = all_vectors(gf, J)
        n_vec = len(self.vecs)
        # D for every possible row of G, and its rank (capped at R + 1)
        self.combos = gf.sum(gf.mul(self.vecs[:, :, None, None], slices[None]), axis=1)
        self.ranks = np.array(
            [0] + [_bounded_rank(gf, self.combos[c], R) for c in range(1, n_vec)]
        )
        weights = gf.q ** np.arange(J - 1, -1, -1)
        self.vadd = gf.add(self.vecs[:, None, :], self.vecs[None, :, :]) @ weights
        self.smul = gf.mul(np.arange(1, gf.q)[:, None, None], self.vecs[None]) @ weights

    def span_with(self, span: frozenset, v: int) -> frozenset:
        scaled = self.smul[:, v]
        return span | frozenset(int(x) for s in span for x in self.vadd[s, scaled])

    def run(self, E: np.ndarray, comps, tags):
        order = [i for rows, _ in comps for i in rows]
        # a component is solved once its last row has been chosen
        ends = {}
        for (rows, _), tag in zip(comps, tags):
            ends[max(order.index(i) for i in rows)] = (rows, tag)
        sizes = [int(np.count_nonzero(E[i])) for i in range(self.J)]
        choice = [0] * self.J
        solution: dict[int, np.ndarray] = {}

        def rec(pos: int, span: frozenset) -> bool:
            if pos == self.J:
                return True
            i = order[pos]
            for v in range(1, len(self.vecs)):
                if v in span or self.ranks[v] > sizes[i]:
                    continue
                choice[i] = v
                if pos in ends:
                    rows, tag = ends[pos]
                    self.budget.spend()
                    Ds = {r: self.combos[choice[r]] for r in rows}
                    sol = _solve_component(self.gf, E, rows, Ds, tag, self.budget)
                    if sol is None:
                        continue
                    solution.update(sol)
                if rec(pos + 1, self.span_with(span, v)):
                    return True
            return False

        if rec(0, frozenset([0])):
            G = self.vecs[choice]
            return G, solution
        return None


def decompose(gf: GF, T, R: int, budget: Budget | int | None = None) -> Decomposition | None:
    """A rank-``R`` decomposition of ``T`` (``R <= 4``), or ``None`` if none exists.

    Raises :class:`~ffdecomp.budget.BudgetExhausted` if ``budget`` runs out;
    that is not evidence either way.  Terms may be zero when ``T`` has
    smaller rank.
    """
    if not 0 <= R <= MAX_RANK:
        raise ValueError(f"rank must be in 0..{MAX_RANK}, got {R}")
    T = np.asarray(T, dtype=np.int64)
    if T.ndim != 3:
        raise ValueError(f"expected an order-3 tensor, got shape {T.shape}")
    if T.size and (T.min() < 0 or T.max() >= gf.q):
        raise ValueError(f"tensor entries must lie in 0..{gf.q - 1}")
    budget = as_budget(budget)
    dims = T.shape
    p, q, s = dims

    fac = rank_factorize_bounded(gf, flatten_slices(T), R)
    if fac is None:
        return None
    Cs, Fs = fac
    J = Cs.shape[1]
    if J == 0:
        return Decomposition.zero(R, dims)
    slices = Fs.reshape(J, q, s)

    search = _Search(gf, slices, R, budget)
    candidates = []
    for E in rref_forms(gf, J, R):
        comps = separate_components(supports_of(E))
        tags = [classify_component(E, rows) for rows, _ in comps]
        difficulty = max(_DIFFICULTY[type(t)] for t in tags)
        candidates.append((difficulty, len(candidates), E, comps, tags))
    candidates.sort(key=lambda c: c[:2])

    for _, _, E, comps, tags in candidates:
        found = search.run(E, comps, tags)
        if found is None:
            continue
        G, sol = found
        zero = np.zeros((q, s), dtype=np.int64)
        Bs, Cfs = [], []
        for r in range(R):
            b, c = rank1_split(gf, sol.get(r, zero))
            Bs.append(b)
            Cfs.append(c)
        A_prime_T = gf.matmul(inverse(gf, G), E)  # J x R
        A = gf.matmul(A_prime_T.T, Cs.T)  # R x p
        d = Decomposition(A, np.array(Bs).reshape(R, q), np.array(Cfs).reshape(R, s))
        if not np.array_equal(evaluate(gf, d), T):
            raise AssertionError("internal error: decomposition does not reproduce the tensor")
        return d
    return None


def tensor_rank(gf: GF, T, max_rank: int = MAX_RANK, budget: Budget | int | None = None) -> int | None:
    """Smallest ``R <= max_rank`` with a rank-``R`` decomposition, else ``None``."""
    budget = as_budget(budget)
    for R in range(max_rank + 1):
        if decompose(gf, T, R, budget) is not None:
            return R
    return None
