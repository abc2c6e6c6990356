"""The 2x2x2 diagonal tensor and its two rank-2 decompositions over GF(2).

    python3 demos/identity_gadget.py
"""

import numpy as np

from ffdecomp import decompose, evaluate, field, identity_gadget, tensor_rank
from ffdecomp.oracle import enumerate_rank2_decompositions

gf = field(2)
I = identity_gadget()
print("tensor (slice by slice):")
for i, s in enumerate(I):
    print(f"  slice {i}: {s.tolist()}")

# No single outer product fits, two do.
print("rank:", tensor_rank(gf, I))
d = decompose(gf, I, 2)
print("decomposition found by the solver:")
for a, b, c in d.terms():
    print(f"  {a} x {b} x {c}")
assert np.array_equal(evaluate(gf, d), I)

# Exhaustive scan: every rank-2 decomposition is one of the two orderings of
# e0^x3 + e1^x3.  This rigidity is what makes the block usable as a gadget.
sols = list(enumerate_rank2_decompositions(gf, I))
print(f"all rank-2 decompositions ({len(sols)}):")
for s in sols:
    print("  A =", s.A.tolist())
