"""Dense order-3 tensors and their CP decompositions over a finite field."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import GF
from .matrix import rank_factorize_bounded


@dataclass(frozen=True)
class Decomposition:
    """``T[i, j, k] = sum_r A[r, i] * B[r, j] * C[r, k]``.

    ``A``, ``B``, ``C`` have shapes ``(R, p)``, ``(R, q)``, ``(R, s)``.
    ``R == 0`` is allowed and evaluates to the zero tensor.
    """

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray

    def __post_init__(self):
        for name in "ABC":
            arr = np.asarray(getattr(self, name), dtype=np.int64)
            if arr.ndim != 2:
                raise ValueError(f"factor {name} must be 2-D, got shape {arr.shape}")
            object.__setattr__(self, name, arr)
        if not self.A.shape[0] == self.B.shape[0] == self.C.shape[0]:
            raise ValueError(
                f"factor row counts differ: {self.A.shape}, {self.B.shape}, {self.C.shape}"
            )

    @property
    def rank(self) -> int:
        return self.A.shape[0]

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.A.shape[1], self.B.shape[1], self.C.shape[1]

    @classmethod
    def zero(cls, R: int, dims: tuple[int, int, int]) -> "Decomposition":
        p, q, s = dims
        return cls(np.zeros((R, p), np.int64), np.zeros((R, q), np.int64), np.zeros((R, s), np.int64))

    def terms(self):
        return zip(self.A, self.B, self.C)

    def permuted(self, order) -> "Decomposition":
        order = list(order)
        return Decomposition(self.A[order], self.B[order], self.C[order])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Decomposition):
            return NotImplemented
        return all(np.array_equal(getattr(self, n), getattr(other, n)) for n in "ABC")

    __hash__ = None


def evaluate(gf: GF, d: Decomposition, dims: tuple[int, int, int] | None = None) -> np.ndarray:
    if dims is not None and tuple(dims) != d.dims:
        raise ValueError(f"decomposition has dims {d.dims}, expected {tuple(dims)}")
    p, q, s = d.dims
    if gf.k == 1:
        return np.einsum("ri,rj,rk->ijk", d.A, d.B, d.C) % gf.p
    out = np.zeros((p, q, s), dtype=np.int64)
    for a, b, c in d.terms():
        out = gf.add(out, outer3(gf, a, b, c))
    return out


def outer3(gf: GF, a, b, c) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    c = np.asarray(c, dtype=np.int64)
    return gf.mul(gf.mul(a[:, None, None], b[None, :, None]), c[None, None, :])


def flatten_slices(T) -> np.ndarray:
    """Row ``i`` is the slice ``T[i, :, :]`` flattened row-major."""
    T = np.asarray(T, dtype=np.int64)
    if T.ndim != 3:
        raise ValueError(f"expected an order-3 tensor, got shape {T.shape}")
    return T.reshape(T.shape[0], -1).copy()


def unflatten_slices(M, q: int, s: int) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    return M.reshape(M.shape[0], q, s).copy()


def rank1_split(gf: GF, M) -> tuple[np.ndarray, np.ndarray]:
    """``(u, v)`` with ``outer(u, v) == M``; raises ``ValueError`` if ``rank(M) > 1``."""
    M = np.asarray(M, dtype=np.int64)
    fac = rank_factorize_bounded(gf, M, 1)
    if fac is None:
        raise ValueError("matrix has rank > 1")
    C, F = fac
    if C.shape[1] == 0:
        return np.zeros(M.shape[0], np.int64), np.zeros(M.shape[1], np.int64)
    return C[:, 0].copy(), F[0].copy()


def random_decomposition(gf: GF, R: int, dims: tuple[int, int, int], rng: np.random.Generator) -> Decomposition:
    p, q, s = dims
    return Decomposition(gf.random(rng, (R, p)), gf.random(rng, (R, q)), gf.random(rng, (R, s)))


def identity_gadget() -> np.ndarray:
    """The 2x2x2 tensor with ones on the main diagonal."""
    T = np.zeros((2, 2, 2), dtype=np.int64)
    T[0, 0, 0] = T[1, 1, 1] = 1
    return T
