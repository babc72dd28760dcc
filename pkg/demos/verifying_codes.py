"""
Checking a code
===============

Two routes to the same answer: a matching for every k-subset, and the
server-side counting test.
"""

import numpy as np

from batchcodes import IncidenceMatrix, is_cbc, naive_is_cbc, retrieval_assignment

rng = np.random.default_rng(7)
bits = (rng.random((4, 8)) < 0.45).astype(np.uint8)
bits[rng.integers(0, 4, size=8), np.arange(8)] = 1
M = IncidenceMatrix(bits)
print(M)

for k in range(1, 6):
    ok, witness = is_cbc(M, k)
    print(k, ok, naive_is_cbc(M, k), witness.describe() if witness else "")

# a concrete read schedule for a request, or the reason it cannot exist
print(retrieval_assignment(M, [1, 2, 3]))
print(retrieval_assignment(M, [1, 2, 3], t=2))
