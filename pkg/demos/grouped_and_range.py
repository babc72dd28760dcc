"""
Building single-probe batch codes
=================================

Start from the grouped code on 6 servers, then shrink it item by item
while keeping storage optimal.
"""

from batchcodes import construct_range, grouped_matrix, is_cbc, optimal_N, total_storage

# three identical groups, each holding every 3-subset of the servers once
G = grouped_matrix(6, 4)
M = G.flatten()
print(M.n, "items,", total_storage(M), "stored copies")
print("any 4 items retrievable:", is_cbc(M, 4)[0])

# the range construction removes columns three at a time and re-adds a pair
M15, trace = construct_range(15, 4, 6)
for s in trace.steps[:4]:
    print(s.deleted, "->", s.modified, "becomes", sorted(s.new_column), " n =", s.n, " N =", s.N)

# every intermediate n lands on the closed form
for n in (57, 54, 51, 30, 15):
    Mn, _ = construct_range(n, 4, 6)
    print(n, total_storage(Mn), optimal_N(n, 4, 6))
