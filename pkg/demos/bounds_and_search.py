"""
Bounds next to exhaustive search
================================
"""

import time

from batchcodes import girth5_edge_bound, is_cbc, optimal_N, tiling_bound, triangle_code
from batchcodes.search import find_span_witness_graph, max_girth5_edges_search, min_storage_search

# closed form against brute force on a tiny instance
print(optimal_N(6, 3, 4), min_storage_search(6, 3, 4).value)

# triangle-free, square-free graphs: guaranteed edges vs the true maximum
for v in range(5, 11):
    print(v, girth5_edge_bound(v), max_girth5_edges_search(v).value)

# 16 triangles on 8 vertices where any 6 triangles touch 6 vertices
t0 = time.perf_counter()
G, tris = find_span_witness_graph(8, 16, 6).witness
M = triangle_code(G, tris)
print(G.edge_list())
print(M.n, M.bits.sum(), is_cbc(M, 6)[0], f"{time.perf_counter() - t0:.1f}s")

tb = tiling_bound(60)
print(tb.d, tb.delta)
