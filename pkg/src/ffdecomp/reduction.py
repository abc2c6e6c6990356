"""NAE-3SAT to rank-2 wildcard decomposition over GF(2).

Variable ``i`` owns the diagonal block ``(2i..2i+1)^3``, fixed to the
2x2x2 identity gadget, whose only rank-2 decompositions are
``(v, 1-v)^x3 + (1-v, v)^x3``.  A clause on literals ``l1, l2, l3`` fixes
the cell at ``(2i1 + s1, 2i2 + s2, 2i3 + s3)`` to 0, ``s`` being 1 for a
negated literal: under the forced form that cell equals
``l1 l2 l3 + (not l1)(not l2)(not l3)``, which is 0 exactly when the
literals are not all equal.  Everything else is a wildcard.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .tensor import Decomposition, identity_gadget
from .wildcard import WILDCARD

Literal = tuple[int, bool]  # (variable, negated)


@dataclass(frozen=True)
class Nae3SatInstance:
    n: int
    clauses: tuple[tuple[Literal, Literal, Literal], ...]

    def __post_init__(self):
        clauses = tuple(tuple((int(v), bool(neg)) for v, neg in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.n < 0:
            raise ValueError("variable count must be non-negative")
        for c in clauses:
            if len(c) != 3:
                raise ValueError(f"clause {c} does not have exactly 3 literals")
            for v, _ in c:
                if not 0 <= v < self.n:
                    raise ValueError(f"variable {v} out of range for n={self.n}")

    @property
    def m(self) -> int:
        return len(self.clauses)


@dataclass(frozen=True)
class GadgetTensor:
    """The reduced instance: a ``2n x 2n x 2n`` wildcard tensor.

    ``dropped`` lists clauses removed as tautologies (one variable appearing
    with both polarities in all three positions).
    """

    cells: np.ndarray
    dropped: tuple[int, ...] = ()

    @property
    def fixed_count(self) -> int:
        return int(np.count_nonzero(self.cells != WILDCARD))


@dataclass(frozen=True)
class ConstantlyUnsat:
    """Clause ``clause`` reads NAE(x, x, x) and can never be satisfied."""

    clause: int


def _literal_value(lit: Literal, assignment) -> int:
    v, neg = lit
    return int(assignment[v]) ^ int(neg)


def verify_nae(inst: Nae3SatInstance, assignment) -> bool:
    if len(assignment) != inst.n:
        raise ValueError(f"assignment has {len(assignment)} values, expected {inst.n}")
    for clause in inst.clauses:
        vals = {_literal_value(lit, assignment) for lit in clause}
        if len(vals) == 1:
            return False
    return True


def nae_brute_force(inst: Nae3SatInstance) -> tuple[int, ...] | None:
    """First satisfying assignment in lexicographic order (variable 0 most significant)."""
    for assignment in itertools.product((0, 1), repeat=inst.n):
        if verify_nae(inst, assignment):
            return assignment
    return None


def reduce_to_rank2_wildcard(inst: Nae3SatInstance) -> GadgetTensor | ConstantlyUnsat:
    size = 2 * inst.n
    cells = np.full((size, size, size), WILDCARD, dtype=np.int64)
    gadget = identity_gadget()
    for i in range(inst.n):
        cells[2 * i : 2 * i + 2, 2 * i : 2 * i + 2, 2 * i : 2 * i + 2] = gadget
    dropped = []
    for idx, clause in enumerate(inst.clauses):
        if len({v for v, _ in clause}) == 1:
            # the clause cell would land inside a variable block
            if len({neg for _, neg in clause}) == 1:
                return ConstantlyUnsat(idx)
            dropped.append(idx)
            continue
        cells[tuple(2 * v + int(neg) for v, neg in clause)] = 0
    return GadgetTensor(cells, tuple(dropped))


def assignment_to_decomposition(n: int, assignment) -> Decomposition:
    """``u^x3 + (1-u)^x3`` with ``u[2i] = v_i`` and ``u[2i+1] = 1 - v_i``."""
    if len(assignment) != n:
        raise ValueError(f"assignment has {len(assignment)} values, expected {n}")
    u = np.zeros(2 * n, dtype=np.int64)
    for i, v in enumerate(assignment):
        u[2 * i] = int(v) & 1
        u[2 * i + 1] = 1 - (int(v) & 1)
    F = np.stack([u, 1 - u])
    return Decomposition(F, F.copy(), F.copy())


def extract_assignment(d: Decomposition, n: int) -> tuple[int, ...] | None:
    """Read ``v_i`` from component ``2i`` if ``d`` has the gadget-forced form."""
    if d.rank != 2 or d.dims != (2 * n,) * 3:
        return None
    u = d.A[0]
    expected = assignment_to_decomposition(n, [int(u[2 * i]) for i in range(n)])
    if not all(np.array_equal(getattr(d, f), getattr(expected, f)) for f in "ABC"):
        return None
    return tuple(int(u[2 * i]) for i in range(n))
