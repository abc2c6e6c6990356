"""NAE-3SAT instances as rank-2 wildcard tensors over GF(2).

    python3 demos/nae_reduction.py

Each variable gets a copy of the diagonal 2x2x2 block; each clause pins one
off-block cell to 0.  Rank-2 fits of the tensor are exactly the satisfying
assignments.
"""

import itertools

from ffdecomp import (
    Nae3SatInstance,
    assignment_to_decomposition,
    extract_assignment,
    field,
    nae_brute_force,
    reduce_to_rank2_wildcard,
    verify_nae,
)
from ffdecomp.oracle import enumerate_rank2_decompositions

gf = field(2)
x, nx = lambda v: (v, False), lambda v: (v, True)

inst = Nae3SatInstance(2, ((x(0), x(1), nx(1)), (x(0), x(0), x(1))))
g = reduce_to_rank2_wildcard(inst)
print(f"{inst.n} variables, {inst.m} clauses -> {g.cells.shape} tensor, {g.fixed_count} fixed cells")

fits = {extract_assignment(d, inst.n) for d in enumerate_rank2_decompositions(gf, g.cells)}
sat = {v for v in itertools.product((0, 1), repeat=inst.n) if verify_nae(inst, v)}
print("assignments read off rank-2 fits:", sorted(fits))
print("satisfying assignments:          ", sorted(sat))
print("first in lexicographic order:", nae_brute_force(inst))

d = assignment_to_decomposition(inst.n, (1, 0))
print("the (1, 0) decomposition, factor A:", d.A.tolist())

unsat = Nae3SatInstance(2, ((x(0), x(0), x(1)), (x(0), x(0), nx(1))))
g = reduce_to_rank2_wildcard(unsat)
print("unsatisfiable pair has a rank-2 fit:", next(enumerate_rank2_decompositions(gf, g.cells), None) is not None)
