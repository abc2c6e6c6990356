"""Rank-1 completion of partially specified tensors and matrices.

    python3 demos/wildcards.py

Wildcard cells (-1) may take any value.  Over GF(2) the answer comes from a
bitwise OR; over larger fields, logarithms turn the products into a linear
system modulo q - 1.
"""

import numpy as np

from ffdecomp import WILDCARD, field, rank1_wildcard, rank1_wildcard_gf2, rank1_wildcard_matrix
from ffdecomp.wildcard import verify_rank1

W_ = WILDCARD
rng = np.random.default_rng(2)

gf = field(7)
a, b, c = (gf.random(rng, 4) for _ in range(3))
T = gf.mul(gf.mul(a[:, None, None], b[None, :, None]), c[None, None, :])
W = np.where(rng.random(T.shape) < 0.6, W_, T)
print(f"GF(7): {np.count_nonzero(W != W_)} of {W.size} cells fixed")
vecs = rank1_wildcard(gf, W)
print("  completion:", [v.tolist() for v in vecs], "valid:", verify_rank1(gf, W, vecs))

W[tuple(np.argwhere(W > 0)[0])] = 0  # a zero inside the support cannot be rank 1
print("  after zeroing a supported cell:", rank1_wildcard(gf, W))

gf2 = field(2)
W = np.full((3, 3, 3), W_)
W[0, 0, 0] = W[2, 1, 2] = 1
print("GF(2) OR construction:", [v.tolist() for v in rank1_wildcard_gf2(gf2, W)])

# Matrices: components of the fixed-cell graph are propagated independently.
M = np.array([[1, W_, W_], [W_, 2, 4], [W_, 1, W_]])
print("GF(5) matrix:", rank1_wildcard_matrix(field(5), M))
