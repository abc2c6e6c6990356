"""Small finite fields GF(p^k) with integer-encoded elements.

An element is an integer ``e`` in ``0..q-1``; its base-``p`` digits are the
coefficients of a polynomial in the adjoined root ``alpha`` (digit ``i`` is
the coefficient of ``alpha**i``).  For ``k == 1`` this is just ``Z/pZ``.

All arithmetic methods are elementwise and accept Python ints or integer
numpy arrays (broadcasting as numpy does).
"""

from __future__ import annotations

import functools
import itertools

import numpy as np

DEFAULT_CAP = 2**16

# Full q*q add/mul lookup tables are built for extension fields up to this order.
_TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# Polynomials over GF(p), as coefficient lists (lowest degree first)
# ---------------------------------------------------------------------------


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m``."""
    a = _poly_trim(list(a))
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _poly_trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b))
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_mod(out, m, p)


def _digits(e: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        e, d = divmod(e, p)
        out.append(d)
    return out


def _undigits(d: list[int], p: int) -> int:
    e = 0
    for c in reversed(d):
        e = e * p + c
    return e


def _monic_polys(p: int, deg: int):
    """Monic polynomials of degree ``deg`` in increasing integer encoding."""
    for low in range(p**deg):
        yield _digits(low, p, deg) + [1]


def is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg//2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(p, d):
            if not _poly_mod(poly, f, p):
                return False
    return True


class GF:
    """The finite field of order ``q = p**k``.

    Construction is deterministic: the modulus is the smallest irreducible
    monic polynomial by integer encoding and ``primitive`` is the smallest
    generator of the multiplicative group.  Instances are immutable; use
    :func:`field` to get a cached one.
    """

    def __init__(self, p: int, k: int = 1, cap: int = DEFAULT_CAP):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if k < 1:
            raise ValueError(f"extension degree must be >= 1, got {k}")
        q = p**k
        if q > cap:
            raise ValueError(f"field order {q} exceeds cap {cap}")
        self.p = p
        self.k = k
        self.q = q

        if k == 1:
            self.modulus = None
        else:
            self.modulus = tuple(
                next(f for f in _monic_polys(p, k) if is_irreducible(f, p))
            )

        self.primitive, exp = self._find_primitive()
        self.exp_table = np.array(exp, dtype=np.int64)
        self.exp_table.flags.writeable = False
        log = np.full(q, -1, dtype=np.int64)
        log[self.exp_table] = np.arange(q - 1)
        log.flags.writeable = False
        self.log_table = log

        self._add_tab = self._mul_tab = None
        if k > 1 and q <= _TABLE_LIMIT:
            a = np.arange(q)[:, None]
            b = np.arange(q)[None, :]
            self._add_tab = self._add_digits(a, b)
            self._mul_tab = self._mul_log(a, b)

    # -- construction helpers ------------------------------------------------

    def _mul_scalar_slow(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        da = _digits(a, self.p, self.k)
        db = _digits(b, self.p, self.k)
        return _undigits(
            _poly_mulmod(da, db, list(self.modulus), self.p) + [0] * self.k, self.p
        ) % self.q

    def _find_primitive(self) -> tuple[int, list[int]]:
        q = self.q
        for g in range(1, q):
            powers = [1]
            x = g
            while x != 1:
                powers.append(x)
                x = self._mul_scalar_slow(x, g)
            if len(powers) == q - 1:
                return g, powers
        raise AssertionError("multiplicative group is not cyclic")  # unreachable

    def _add_digits(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        base = 1
        for _ in range(self.k):
            out += ((a // base % self.p + b // base % self.p) % self.p) * base
            base *= self.p
        return out

    def _neg_digits(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        out = np.zeros(a.shape, dtype=np.int64)
        base = 1
        for _ in range(self.k):
            out += ((-(a // base % self.p)) % self.p) * base
            base *= self.p
        return out

    def _mul_log(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        nz = (a != 0) & (b != 0)
        la = self.log_table[np.where(a == 0, 1, a)]
        lb = self.log_table[np.where(b == 0, 1, b)]
        return np.where(nz, self.exp_table[(la + lb) % (self.q - 1)], 0)

    # -- elementwise arithmetic ---------------------------------------------

    @staticmethod
    def _out(x, *args):
        return int(x) if _scalars(*args) else x

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self._add_tab is not None:
            return self._out(self._add_tab[a, b], a, b)
        return self._out(self._add_digits(a, b), a, b)

    def neg(self, a):
        if self.k == 1:
            return (-a) % self.p
        return self._out(self._neg_digits(a), a)

    def sub(self, a, b):
        if self.k == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        if self._mul_tab is not None:
            return self._out(self._mul_tab[a, b], a, b)
        return self._out(self._mul_log(a, b), a, b)

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        a_ = np.asarray(a, dtype=np.int64)
        out = self.exp_table[(-self.log_table[a_]) % (self.q - 1)]
        return self._out(out, a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def dlog(self, x) -> int:
        """Exponent ``t`` in ``0..q-2`` with ``primitive**t == x``."""
        if np.any(np.asarray(x) == 0):
            raise ZeroDivisionError("discrete log of zero")
        return self._out(self.log_table[x], x)

    def pow_primitive(self, t):
        return self._out(self.exp_table[np.asarray(t) % (self.q - 1)], t)

    # -- array helpers -------------------------------------------------------

    def elements(self) -> range:
        return range(self.q)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a @ b) % self.p
        out = np.zeros(a.shape[:-1] + b.shape[-1:], dtype=np.int64)
        for t in range(a.shape[-1]):
            out = self.add(out, self.mul(a[..., :, t, None], b[..., t, None, :]))
        return out

    def sum(self, a: np.ndarray, axis: int = 0) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return a.sum(axis=axis) % self.p
        a = np.moveaxis(a, axis, 0)
        out = np.zeros(a.shape[1:], dtype=np.int64)
        for x in a:
            out = self.add(out, x)
        return out

    def random(self, rng: np.random.Generator, shape) -> np.ndarray:
        return rng.integers(0, self.q, size=shape, dtype=np.int64)

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash((self.p, self.k))


def _scalars(*args) -> bool:
    return all(isinstance(a, (int, np.integer)) for a in args)


@functools.lru_cache(maxsize=None)
def field(p: int, k: int = 1, cap: int = DEFAULT_CAP) -> GF:
    """Cached :class:`GF` constructor."""
    return GF(p, k, cap)


def field_of_order(q: int) -> GF:
    """The field with ``q`` elements, if ``q`` is a prime power."""
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            r = q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1 or not is_prime(p):
                raise ValueError(f"{q} is not a prime power")
            return field(p, k)
    raise ValueError(f"{q} is not a prime power")


def all_vectors(gf: GF, length: int) -> np.ndarray:
    """Every vector of ``gf**length`` in lexicographic order, as rows."""
    if length == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.product(range(gf.q), repeat=length)), dtype=np.int64)
