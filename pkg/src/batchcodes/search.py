"""
Exhaustive oracles: minimum storage, maximum uniform n, triangle-rich
graphs with the span property, and extremal girth-5 graphs.

Every search takes a :class:`SearchBudget`; running out of budget yields a
result with status EXHAUSTED, never a silent answer.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Any, Optional

import networkx as nx

from .bounds import girth5_edge_bound
from .core import IncidenceMatrix, popcount
from .graphs import Graph

__all__ = [
    'SearchBudget', 'Status', 'SearchResult', 'min_storage_search',
    'max_uniform_n_search', 'find_span_witness_graph', 'max_girth5_edges_search',
]


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 10_000_000
    max_seconds: float = 600.0

    def __post_init__(self):
        if self.max_nodes <= 0 or self.max_seconds <= 0:
            raise ValueError("budget limits must be positive")


class Status(enum.Enum):
    OPTIMAL = 'OPTIMAL'
    FOUND = 'FOUND'
    NONE = 'NONE'
    UNBOUNDED = 'UNBOUNDED'
    EXHAUSTED = 'EXHAUSTED'


@dataclass(frozen=True)
class SearchResult:
    status: Status
    value: Optional[int] = None     # optimum, or best-so-far when EXHAUSTED
    witness: Any = None
    nodes: int = 0
    extra: dict = field(default_factory=dict)


class _Exhausted(Exception):
    pass


class _Meter:
    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.nodes = 0
        self.deadline = time.monotonic() + budget.max_seconds

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget.max_nodes or (
                self.nodes % 4096 == 0 and time.monotonic() > self.deadline):
            raise _Exhausted


def _colex_key(mask: int):
    return (popcount(mask), [i for i in range(mask.bit_length() - 1, -1, -1) if mask >> i & 1])


def _deficiency_sets(m: int, k: int, t: int):
    """Server bitmasks R with t|R| < k, and their capacities t|R|."""
    r_max = min(m, -(-k // t) - 1)
    sets = []
    for r in range(1, r_max + 1):
        for rows in combinations(range(m), r):
            sets.append((sum(1 << i for i in rows), t * r))
    return sets


def min_storage_search(n: int, k: int, m: int, t: int = 1,
                       budget: SearchBudget = SearchBudget(), symmetry: bool = True) -> SearchResult:
    """
    Exact minimum N over all m x n 0-1 matrices that are valid codes.

    Columns are chosen as a multiset in non-decreasing (weight, colex)
    order. With ``symmetry`` the first column is pinned to rows 1..w (any
    code can be row-permuted that way). Branch and bound: storage so far
    plus the current weight for every remaining column.
    """
    if k > n:
        raise ValueError(f"k={k} exceeds n={n}")
    if k > t * m:
        return SearchResult(Status.NONE)
    cols = sorted(range(1, 1 << m), key=_colex_key)
    weights = [popcount(c) for c in cols]
    sets = _deficiency_sets(m, k, t)
    inside = [[ri for ri, (R, _) in enumerate(sets) if c & ~R == 0] for c in cols]
    caps = [cap for _, cap in sets]
    counts = [0] * len(sets)
    chosen: list[int] = []
    # all-ones columns always work when k <= t m
    best = [n * m + 1, None]
    meter = _Meter(budget)

    def dfs(start, storage):
        meter.tick()
        left = n - len(chosen)
        if left == 0:
            if storage < best[0]:
                best[0] = storage
                best[1] = list(chosen)
            return
        for ci in range(start, len(cols)):
            if storage + left * weights[ci] >= best[0]:
                break
            if symmetry and not chosen and cols[ci] != (1 << weights[ci]) - 1:
                continue
            bad = False
            for ri in inside[ci]:
                if counts[ri] >= caps[ri]:
                    bad = True
                    break
            if bad:
                continue
            for ri in inside[ci]:
                counts[ri] += 1
            chosen.append(cols[ci])
            dfs(ci, storage + weights[ci])
            chosen.pop()
            for ri in inside[ci]:
                counts[ri] -= 1

    try:
        dfs(0, 0)
    except _Exhausted:
        witness = IncidenceMatrix.from_masks(best[1], m) if best[1] else None
        value = best[0] if best[1] else n * m
        return SearchResult(Status.EXHAUSTED, value, witness, meter.nodes)
    return SearchResult(Status.OPTIMAL, best[0], IncidenceMatrix.from_masks(best[1], m), meter.nodes)


def max_uniform_n_search(m: int, c: int, k: int, t: int = 1,
                         budget: SearchBudget = SearchBudget(), symmetry: bool = True) -> SearchResult:
    """
    Largest number of weight-c columns (a multiset over the C(m, c)
    supports) forming a valid code. With ``symmetry`` the first support is
    required to carry a largest multiplicity.
    """
    if not 1 <= c <= m:
        raise ValueError(f"need 1 <= c <= m, got c={c}, m={m}")
    if k <= c * t:
        return SearchResult(Status.UNBOUNDED)
    supports = [sum(1 << i for i in s) for s in combinations(range(m), c)]
    sets = _deficiency_sets(m, k, t)
    inside = [[ri for ri, (R, _) in enumerate(sets) if s & ~R == 0] for s in supports]
    caps = [cap for _, cap in sets]
    counts = [0] * len(sets)
    cap_single = c * t          # R = the support itself
    mult = [0] * len(supports)
    best = [-1, None]
    meter = _Meter(budget)

    def dfs(i, total, ceiling):
        meter.tick()
        if i == len(supports):
            if total > best[0]:
                best[0] = total
                best[1] = list(mult)
            return
        if total + (len(supports) - i) * ceiling <= best[0]:
            return
        room = min(caps[ri] - counts[ri] for ri in inside[i])
        for a in range(min(room, ceiling), -1, -1):
            for ri in inside[i]:
                counts[ri] += a
            mult[i] = a
            dfs(i + 1, total + a, a if (symmetry and i == 0) else ceiling)
            for ri in inside[i]:
                counts[ri] -= a
        mult[i] = 0

    try:
        dfs(0, 0, cap_single)
    except _Exhausted:
        return SearchResult(Status.EXHAUSTED, max(best[0], 0), _uniform_matrix(supports, best[1], m), meter.nodes)
    return SearchResult(Status.OPTIMAL, best[0], _uniform_matrix(supports, best[1], m), meter.nodes)


def _uniform_matrix(supports, mult, m):
    if not mult or not any(mult):
        return None
    masks = [s for s, a in zip(supports, mult) for _ in range(a)]
    return IncidenceMatrix.from_masks(masks, m)


def find_span_witness_graph(v: int, triangle_target: int, k: int,
                            budget: SearchBudget = SearchBudget()) -> SearchResult:
    """
    A graph on ``v`` vertices with at least ``triangle_target`` triangles
    such that any k of them span at least k vertices, i.e. every vertex set
    R with |R| < k contains at most |R| triangles.

    Edge-by-edge branch and bound; the first triangle is pinned to
    vertices 0, 1, 2. Status FOUND carries ``(graph, triangles)``.
    """
    if triangle_target < 1:
        raise ValueError("triangle_target must be positive")
    pairs = list(combinations(range(v), 2))
    pid = {p: i for i, p in enumerate(pairs)}
    tris = list(combinations(range(v), 3))
    tri_edges = [(pid[(a, b)], pid[(a, c)], pid[(b, c)]) for a, b, c in tris]
    tris_of_edge = [[] for _ in pairs]
    for ti, es in enumerate(tri_edges):
        for e in es:
            tris_of_edge[e].append(ti)
    sets = [sum(1 << x for x in R) for r in range(3, min(v, k - 1) + 1) for R in combinations(range(v), r)]
    set_cap = [popcount(R) for R in sets]
    sets_of_tri = []
    for a, b, c in tris:
        tm = (1 << a) | (1 << b) | (1 << c)
        sets_of_tri.append([si for si, R in enumerate(sets) if tm & ~R == 0])
    state = [0] * len(pairs)      # 0 undecided, 1 in, -1 out
    tri_in = [0] * len(tris)      # number of included edges
    tri_dead = [0] * len(tris)    # number of excluded edges
    counts = [0] * len(sets)
    total = [0, len(tris)]        # complete triangles, still-possible triangles
    meter = _Meter(budget)
    found = []

    def include(e):
        state[e] = 1
        made = []
        for ti in tris_of_edge[e]:
            tri_in[ti] += 1
            if tri_in[ti] == 3:
                made.append(ti)
        ok = True
        for ti in made:
            total[0] += 1
            for si in sets_of_tri[ti]:
                counts[si] += 1
                if counts[si] > set_cap[si]:
                    ok = False
        return made, ok

    def undo_include(e, made):
        for ti in made:
            total[0] -= 1
            for si in sets_of_tri[ti]:
                counts[si] -= 1
        for ti in tris_of_edge[e]:
            tri_in[ti] -= 1
        state[e] = 0

    def exclude(e):
        state[e] = -1
        for ti in tris_of_edge[e]:
            tri_dead[ti] += 1
            if tri_dead[ti] == 1:
                total[1] -= 1

    def undo_exclude(e):
        for ti in tris_of_edge[e]:
            tri_dead[ti] -= 1
            if tri_dead[ti] == 0:
                total[1] += 1
        state[e] = 0

    def dfs(e):
        meter.tick()
        if total[1] < triangle_target:
            return False
        if e == len(pairs):
            if total[0] >= triangle_target:
                found.append([pairs[i] for i in range(len(pairs)) if state[i] == 1])
                return True
            return False
        if state[e] != 0:
            return dfs(e + 1)
        made, ok = include(e)
        if ok and dfs(e + 1):
            return True
        undo_include(e, made)
        exclude(e)
        if dfs(e + 1):
            return True
        undo_exclude(e)
        return False

    if v < 3:
        return SearchResult(Status.NONE)
    for e in (pid[(0, 1)], pid[(0, 2)], pid[(1, 2)]):
        _, ok = include(e)
    try:
        hit = dfs(0) if ok else False
    except _Exhausted:
        return SearchResult(Status.EXHAUSTED, nodes=meter.nodes)
    if not hit:
        return SearchResult(Status.NONE, nodes=meter.nodes)
    G = Graph(v, found[0])
    return SearchResult(Status.FOUND, len(G.triangles()), (G, G.triangles()), meter.nodes)


def _girth5_levels(v: int, target: int, meter: _Meter):
    """
    Girth-5 graphs on v vertices with >= target edges, up to isomorphism,
    grown one vertex at a time. Each graph is built so that the last vertex
    has minimum degree, so a graph with e edges on i vertices shrinks to one
    with >= e - floor(2e/i) edges on i - 1 vertices; these thresholds prune
    every level.
    """
    need = [0] * (v + 1)
    need[v] = target
    for i in range(v, 1, -1):
        need[i - 1] = max(0, need[i] - (2 * need[i]) // i)
    level = [nx.empty_graph(1)] if need[1] <= 0 else []
    for i in range(2, v + 1):
        buckets: dict[str, list] = {}
        out = []
        for G in level:
            new = i - 1
            degs = dict(G.degree())
            min_deg = min(degs.values())
            dist = dict(nx.all_pairs_shortest_path_length(G, cutoff=2))
            verts = list(G.nodes)
            # neighbour sets of the new vertex: pairwise distance >= 3
            max_size = min(min_deg + 1, len(verts))

            def extend(start, chosen):
                meter.tick()
                yield list(chosen)
                if len(chosen) == max_size:
                    return
                for idx in range(start, len(verts)):
                    x = verts[idx]
                    if all(dist[x].get(y, 3) >= 3 for y in chosen):
                        chosen.append(x)
                        yield from extend(idx + 1, chosen)
                        chosen.pop()

            for S in extend(0, []):
                if G.number_of_edges() + len(S) < need[i]:
                    continue
                # the new vertex must have minimum degree in the new graph
                if any(degs[x] + (x in S) < len(S) for x in verts):
                    continue
                H = G.copy()
                H.add_node(new)
                H.add_edges_from((new, x) for x in S)
                key = nx.weisfeiler_lehman_graph_hash(H, iterations=3)
                bucket = buckets.setdefault(key, [])
                if any(nx.is_isomorphic(H, K) for K in bucket):
                    continue
                bucket.append(H)
                out.append(H)
        level = out
    return level


def max_girth5_edges_search(v: int, budget: SearchBudget = SearchBudget()) -> SearchResult:
    """
    Exact maximum number of edges of a triangle- and square-free graph on
    ``v`` vertices, by orderly vertex-by-vertex generation with isomorph
    rejection. Status EXHAUSTED carries the best lower bound found so far.
    """
    if v < 1:
        raise ValueError("v must be positive")
    meter = _Meter(budget)
    best, witness = 0, Graph(v)
    target = girth5_edge_bound(v) if v >= 3 else 0
    try:
        graphs = _girth5_levels(v, target, meter)
        while not graphs and target > 0:
            target -= 1
            graphs = _girth5_levels(v, target, meter)
        while graphs:
            H = max(graphs, key=lambda g: (g.number_of_edges(), sorted(g.edges)))
            best, witness = H.number_of_edges(), Graph(v, H.edges)
            graphs = _girth5_levels(v, best + 1, meter)
    except _Exhausted:
        return SearchResult(Status.EXHAUSTED, best, witness, meter.nodes)
    return SearchResult(Status.OPTIMAL, best, witness, meter.nodes)
