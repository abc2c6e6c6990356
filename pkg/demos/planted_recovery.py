"""Plant random low-rank tensors and recover a decomposition.

    python3 demos/planted_recovery.py [n]

Recovered factors usually differ from the planted ones (decompositions are
rarely unique); what matters is that they evaluate back to the same tensor.
"""

import sys
import time

import numpy as np

from ffdecomp import decompose, evaluate, field
from ffdecomp.tensor import random_decomposition

n = int(sys.argv[1]) if len(sys.argv) > 1 else 16
rng = np.random.default_rng(0)

print(f"{'field':>7} {'R':>2} {'seconds':>8}  same tensor?")
for pk, ranks in [((2, 1), range(1, 5)), ((3, 1), range(1, 5)), ((2, 2), range(1, 4)), ((7, 1), range(1, 4))]:
    gf = field(*pk)
    for R in ranks:
        planted = random_decomposition(gf, R, (n, n, n), rng)
        T = evaluate(gf, planted)
        t = time.perf_counter()
        d = decompose(gf, T, R)
        dt = time.perf_counter() - t
        same = d is not None and np.array_equal(evaluate(gf, d), T)
        print(f"{'GF(%d)' % gf.q:>7} {R:>2} {dt:8.3f}  {same}")

# A rank-3 tensor has no rank-2 decomposition; the solver proves it.
gf = field(3)
T = evaluate(gf, random_decomposition(gf, 3, (n, n, n), rng))
print("rank-3 tensor asked for rank 2:", decompose(gf, T, 2))
