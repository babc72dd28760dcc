"""
Combinatorial batch codes: construction, verification, bounds and
exhaustive oracles for replication layouts of n items on m servers where
any k items can be fetched reading at most t items per server.
"""

from .core import (
    CodeParams, GroupedMatrix, IncidenceMatrix, SetSystem, build_matrix, dualize, grouped_matrix, span,
    total_storage,
)
from .verifier import (
    RetrievalAssignment, Violation, find_transversal, is_cbc, naive_is_cbc, retrieval_assignment,
)
from .bounds import (
    BoundResult, Kind, TilingBound, girth5_edge_bound, optimal_N, optimal_N_t, tiling_bound, tiling_level,
    uniform_max_n, uniform_max_n_t,
)
from .graphs import Graph
from .constructions import (
    ConstructionError, ConstructionTrace, augment_pairs_code, construct_girth5, construct_path_pack,
    construct_range, construct_saturated, construct_spread, construct_uniform_replication, edge_code,
    triangle_code,
)
from .search import (
    SearchBudget, SearchResult, Status, find_span_witness_graph, max_girth5_edges_search,
    max_uniform_n_search, min_storage_search,
)

__version__ = '0.1.0'
