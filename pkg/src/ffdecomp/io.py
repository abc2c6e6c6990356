"""Plain-text file formats.

All formats are whitespace-separated tokens; ``#`` starts a comment that
runs to the end of the line (``c`` lines in CNF files).

Tensor::

    TENSOR3 p k d0 d1 d2
    <d0*d1*d2 values, last index fastest; * marks a wildcard>

Matrix::

    MATRIX p k m n
    <m*n values, row-major>

Decomposition::

    DECOMP p k R d0 d1 d2
    <R lines of d0 values: A>
    <R lines of d1 values: B>
    <R lines of d2 values: C>

Rank-1 vectors (solver output)::

    RANK1 p k d0 [d1 [d2]]
    <one line per vector>

NAE-3SAT, DIMACS style::

    p nae <n> <m>
    <m clauses of three nonzero literals, each terminated by 0>
"""

from __future__ import annotations

import re

import numpy as np

from .field import GF, field, is_prime
from .reduction import Nae3SatInstance
from .tensor import Decomposition
from .wildcard import WILDCARD


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


class _Tokens:
    def __init__(self, text: str, comment: str = "#"):
        self.toks: list[tuple[str, int, int]] = []
        lines = text.splitlines()
        for ln, line in enumerate(lines, start=1):
            if comment == "c" and re.match(r"\s*c(\s|$)", line):
                continue
            if comment == "#":
                line = line.split("#", 1)[0]
            for m in re.finditer(r"\S+", line):
                self.toks.append((m.group(), ln, m.start() + 1))
        self.pos = 0
        self.end = (len(lines) or 1, (len(lines[-1]) + 1) if lines else 1)

    def where(self) -> tuple[int, int]:
        if self.pos < len(self.toks):
            return self.toks[self.pos][1:]
        return self.end

    def error(self, msg: str) -> ParseError:
        return ParseError(msg, *self.where())

    def next(self, what: str) -> str:
        if self.pos >= len(self.toks):
            raise self.error(f"unexpected end of input, expected {what}")
        tok = self.toks[self.pos][0]
        self.pos += 1
        return tok

    def expect(self, word: str) -> None:
        if self.pos < len(self.toks) and self.toks[self.pos][0] == word:
            self.pos += 1
            return
        got = self.toks[self.pos][0] if self.pos < len(self.toks) else "end of input"
        raise self.error(f"expected {word!r}, got {got!r}")

    def int(self, what: str, lo: int | None = None, hi: int | None = None) -> int:
        tok = self.next(what)
        try:
            v = int(tok)
        except ValueError:
            self.pos -= 1
            raise self.error(f"expected {what}, got {tok!r}") from None
        if (lo is not None and v < lo) or (hi is not None and v > hi):
            self.pos -= 1
            bounds = f"{lo if lo is not None else '-inf'}..{hi if hi is not None else 'inf'}"
            raise self.error(f"{what} {v} out of range {bounds}")
        return v

    def value(self, gf: GF, wild: bool) -> int:
        if wild and self.pos < len(self.toks) and self.toks[self.pos][0] == "*":
            self.pos += 1
            return WILDCARD
        if not wild and self.pos < len(self.toks) and self.toks[self.pos][0] == "*":
            raise self.error("wildcard not allowed here")
        return self.int("field element", 0, gf.q - 1)

    def done(self) -> None:
        if self.pos < len(self.toks):
            raise self.error(f"unexpected trailing token {self.toks[self.pos][0]!r}")


def _field_header(t: _Tokens) -> GF:
    p = t.int("characteristic", 2)
    if not is_prime(p):
        t.pos -= 1
        raise t.error(f"{p} is not prime")
    k = t.int("extension degree", 1)
    try:
        return field(p, k)
    except ValueError as e:
        t.pos -= 2
        raise t.error(str(e)) from None


def _fmt_rows(rows) -> str:
    return "".join(" ".join(str(int(v)) if v != WILDCARD else "*" for v in row) + "\n" for row in rows)


def read_tensor(text: str, allow_wildcards: bool = True) -> tuple[GF, np.ndarray]:
    t = _Tokens(text)
    t.expect("TENSOR3")
    gf = _field_header(t)
    dims = tuple(t.int("dimension", 0) for _ in range(3))
    vals = [t.value(gf, allow_wildcards) for _ in range(int(np.prod(dims)))]
    t.done()
    return gf, np.array(vals, dtype=np.int64).reshape(dims)


def write_tensor(gf: GF, T) -> str:
    T = np.asarray(T)
    out = [f"TENSOR3 {gf.p} {gf.k} {' '.join(map(str, T.shape))}\n"]
    for i in range(T.shape[0]):
        out.append(_fmt_rows(T[i]) + ("\n" if i + 1 < T.shape[0] else ""))
    return "".join(out)


def read_matrix(text: str, allow_wildcards: bool = True) -> tuple[GF, np.ndarray]:
    t = _Tokens(text)
    t.expect("MATRIX")
    gf = _field_header(t)
    m, n = t.int("row count", 0), t.int("column count", 0)
    vals = [t.value(gf, allow_wildcards) for _ in range(m * n)]
    t.done()
    return gf, np.array(vals, dtype=np.int64).reshape(m, n)


def write_matrix(gf: GF, M) -> str:
    M = np.asarray(M)
    return f"MATRIX {gf.p} {gf.k} {M.shape[0]} {M.shape[1]}\n" + _fmt_rows(M)


def read_decomposition(text: str) -> tuple[GF, Decomposition]:
    t = _Tokens(text)
    t.expect("DECOMP")
    gf = _field_header(t)
    R = t.int("rank", 0)
    dims = [t.int("dimension", 0) for _ in range(3)]
    factors = [
        np.array([t.value(gf, False) for _ in range(R * d)], dtype=np.int64).reshape(R, d) for d in dims
    ]
    t.done()
    return gf, Decomposition(*factors)


def write_decomposition(gf: GF, d: Decomposition) -> str:
    head = f"DECOMP {gf.p} {gf.k} {d.rank} {' '.join(map(str, d.dims))}\n"
    return head + "".join(_fmt_rows(M) for M in (d.A, d.B, d.C))


def write_vectors(gf: GF, vectors) -> str:
    dims = " ".join(str(len(v)) for v in vectors)
    return f"RANK1 {gf.p} {gf.k} {dims}\n" + _fmt_rows(vectors)


def read_cnf(text: str) -> Nae3SatInstance:
    t = _Tokens(text, comment="c")
    t.expect("p")
    t.expect("nae")
    n = t.int("variable count", 0)
    m = t.int("clause count", 0)
    clauses = []
    for _ in range(m):
        lits = []
        while True:
            v = t.int("literal", -n, n)
            if v == 0:
                break
            if len(lits) == 3:
                t.pos -= 1
                raise t.error("clause has more than 3 literals")
            lits.append((abs(v) - 1, v < 0))
        if len(lits) != 3:
            t.pos -= 1
            raise t.error(f"clause has {len(lits)} literals, expected 3")
        clauses.append(tuple(lits))
    t.done()
    return Nae3SatInstance(n, tuple(clauses))


def write_cnf(inst: Nae3SatInstance) -> str:
    lines = [f"p nae {inst.n} {inst.m}\n"]
    for clause in inst.clauses:
        lines.append(" ".join(str(-(v + 1) if neg else v + 1) for v, neg in clause) + " 0\n")
    return "".join(lines)
