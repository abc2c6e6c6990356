"""Rank distribution of every 2x2x2 tensor over GF(2) and a sample over GF(3).

    python3 demos/small_tensor_ranks.py
"""

from collections import Counter

import numpy as np

from ffdecomp import field, tensor_rank

gf = field(2)
hist = Counter()
for code in range(256):
    T = np.array([(code >> b) & 1 for b in range(8)]).reshape(2, 2, 2)
    hist[tensor_rank(gf, T)] += 1
print("GF(2), all 256 tensors:", dict(sorted(hist.items())))

gf = field(3)
rng = np.random.default_rng(1)
hist = Counter(tensor_rank(gf, gf.random(rng, (2, 2, 2))) for _ in range(300))
print("GF(3), 300 random tensors:", dict(sorted(hist.items())))
