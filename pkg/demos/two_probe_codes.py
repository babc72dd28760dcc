"""
Reading two items per server
============================

Replicating every pair of servers a fixed number of times gives the t = 2
comparison table. The t = 1 storage values are only quoted.
"""

from batchcodes import construct_uniform_replication, is_cbc, total_storage, uniform_max_n_t
from batchcodes.reports import format_compare

M = construct_uniform_replication(10, 2, 4)
print(M.n, total_storage(M), is_cbc(M, 5, 2)[0], is_cbc(M, 6, 2)[0])
print(uniform_max_n_t(10, 2, 5, 2))

print(format_compare())
