"""
Explicit codes. Every constructor checks its own output with ``is_cbc``
and raises :class:`ConstructionError` if the check fails.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional

from .bounds import girth5_edge_bound, optimal_N
from .core import IncidenceMatrix, build_matrix, grouped_matrix, popcount, total_storage
from .graphs import Graph
from .verifier import deficient_sets, is_cbc

__all__ = [
    'ConstructionError', 'TraceStep', 'ConstructionTrace', 'construct_range',
    'construct_saturated', 'construct_spread', 'construct_uniform_replication',
    'edge_code', 'triangle_code', 'construct_path_pack', 'construct_girth5',
    'augment_pairs_code', 'ForbiddenConfiguration',
]


class ConstructionError(RuntimeError):
    """A constructor produced something that is not a valid code (a bug)."""


class ForbiddenConfiguration(ValueError):
    def __init__(self, vertices, message):
        super().__init__(message)
        self.vertices = tuple(vertices)


def _require_valid(M: IncidenceMatrix, k: int, t: int, what: str) -> IncidenceMatrix:
    ok, witness = is_cbc(M, k, t)
    if not ok:
        raise ConstructionError(f"{what} is not a valid code for k={k}, t={t}: "
                                f"items {sorted(witness.items)} span servers {sorted(witness.spanned)}")
    return M


@dataclass(frozen=True)
class TraceStep:
    """One delete-and-modify step. Column ids refer to the grouped matrix numbering."""
    deleted: tuple[int, ...]
    modified: Optional[int]
    new_column: Optional[frozenset[int]]
    n: int
    N: int
    fallback: bool = False


@dataclass(frozen=True)
class ConstructionTrace:
    steps: tuple[TraceStep, ...]


class _RangeState:
    """Alive columns of the grouped matrix, keyed by their original 1-based id."""

    def __init__(self, m, k):
        self.m, self.k = m, k
        gm = grouped_matrix(m, k)
        self.group_size = comb(m, k - 1)
        self.support = {}
        for g, group in enumerate(gm.groups):
            for pos, s in enumerate(group):
                self.support[g * self.group_size + pos + 1] = s
        self.index = {s: pos for pos, s in enumerate(gm.groups[0])}

    def id_of(self, support, group):
        return group * self.group_size + self.index[support] + 1

    def group_of(self, cid):
        return (cid - 1) // self.group_size

    def alive_copy(self, support, groups):
        """First alive column, scanning ``groups`` in order, whose original and current support is ``support``."""
        for g in groups:
            cid = self.id_of(support, g)
            if self.support.get(cid) == support:
                return cid
        return None

    def matrix(self):
        ids = sorted(self.support)
        return build_matrix([self.support[i] for i in ids], self.m), ids


def _planned_steps(m, k):
    """
    The literal delete-and-modify schedule, as (deletion supports with group
    preference, modified support and group preference, new support) triples.
    """
    rest = range(2, m + 1)
    last = k - 2
    # phase 1: each (k-2)-subset P of {2..m}, reverse lexicographic
    for P in reversed(list(combinations(rest, k - 2))):
        P = frozenset(P)
        dels = [(P | {x}, 'high') for x in rest if x not in P]
        yield dels, (P | {1}, [last]), P
    # phase 2: each (k-3)-subset Q of {2..m}, lexicographic
    for Q in combinations(rest, k - 3):
        Q = frozenset(Q)
        xs = [x for x in rest if x not in Q]
        dels = [(Q | {1, x}, 'low') for x in xs[:-1]]
        yield dels, (Q | {1, xs[-1]}, 'low'), Q | {1}


def _groups(pref, k):
    if pref == 'high':
        return list(range(k - 2, -1, -1))
    if pref == 'low':
        return list(range(k - 1))
    return pref


def _literal_step(state, plan):
    dels, (mod_support, mod_pref), new = plan
    deleted = []
    for support, pref in dels:
        cid = state.alive_copy(support, _groups(pref, state.k))
        if cid is None:
            return None
        deleted.append(cid)
    mod = state.alive_copy(mod_support, _groups(mod_pref, state.k))
    if mod is None:
        return None
    return deleted, mod, new


def _fallback_step(state, k, batch, deadline):
    """Any modification plus ``batch`` deletions that keeps the code valid."""
    m = state.m
    ids = sorted(state.support)
    heavy = [c for c in ids if len(state.support[c]) == k - 1]

    def search(supports, dels, mod):
        M = build_matrix([supports[c] for c in sorted(supports)], m)
        bad = next(deficient_sets(M, k, 1), None)
        if bad is None:
            return dels
        if len(dels) == batch or time.monotonic() > deadline:
            return None
        for c in sorted(supports):
            if c == mod or c not in heavy or c in dels:
                continue
            mask = sum(1 << (s - 1) for s in supports[c])
            if mask & ~bad == 0:
                trial = dict(supports)
                del trial[c]
                found = search(trial, dels + [c], mod)
                if found is not None:
                    return found
        return None

    for mod in heavy:
        for drop in sorted(state.support[mod]):
            new = state.support[mod] - {drop}
            supports = dict(state.support)
            supports[mod] = new
            dels = search(supports, [], mod)
            if dels is None:
                continue
            for c in reversed(heavy):
                if len(dels) == batch:
                    break
                if c != mod and c not in dels:
                    dels.append(c)
            if len(dels) == batch:
                return dels, mod, new
    return None


def construct_range(n: int, k: int, m: int, *, max_seconds: float = 60.0):
    """
    Optimal code for C(m, k-2) <= n <= (k-1) C(m, k-1), by deleting columns
    from the grouped matrix in batches of m-k+1 and lowering the weight of
    one column per batch. Returns ``(matrix, trace)``.
    """
    if not 3 <= k <= m:
        raise ValueError(f"need 3 <= k <= m, got k={k}, m={m}")
    lo, hi = comb(m, k - 2), (k - 1) * comb(m, k - 1)
    if not lo <= n <= hi:
        raise ValueError(f"n={n} outside [{lo}, {hi}]")
    batch = m - k + 1
    state = _RangeState(m, k)
    deadline = time.monotonic() + max_seconds
    steps = []
    cur_n = hi
    plans = _planned_steps(m, k)

    def storage():
        return sum(len(s) for s in state.support.values())

    while cur_n - batch >= n:
        plan = next(plans, None)
        chosen = _literal_step(state, plan) if plan is not None else None
        fallback = False
        if chosen is not None:
            deleted, mod, new = chosen
            saved = dict(state.support)
            for c in deleted:
                del state.support[c]
            state.support[mod] = new
            M, _ = state.matrix()
            if not is_cbc(M, k, 1)[0]:
                state.support = saved
                chosen = None
        if chosen is None:
            fallback = True
            chosen = _fallback_step(state, k, batch, deadline)
            if chosen is None:
                raise ConstructionError(f"no valid delete-and-modify step at n={cur_n}")
            deleted, mod, new = chosen
            for c in deleted:
                del state.support[c]
            state.support[mod] = new
        cur_n -= batch
        steps.append(TraceStep(tuple(deleted), mod, frozenset(new), cur_n, storage(), fallback))

    r = cur_n - n
    if r:
        plan = next(plans, None)
        chosen = _literal_step(state, plan) if plan is not None else None
        if chosen is not None:
            deleted = chosen[0][:r]
        else:
            heavy = [c for c in sorted(state.support) if len(state.support[c]) == k - 1]
            deleted = heavy[::-1][:r]
        for c in deleted:
            del state.support[c]
        steps.append(TraceStep(tuple(deleted), None, None, n, storage(), chosen is None))

    M, _ = state.matrix()
    _require_valid(M, k, 1, f"construct_range({n}, {k}, {m})")
    expected = optimal_N(n, k, m).value
    if total_storage(M) != expected:
        raise ConstructionError(f"storage {total_storage(M)} != optimal {expected}")
    return M, ConstructionTrace(tuple(steps))


def construct_saturated(n: int, k: int, m: int) -> IncidenceMatrix:
    """Grouped matrix plus weight-k columns: optimal for n >= (k-1) C(m, k-1)."""
    if not 2 <= k <= m:
        raise ValueError(f"need 2 <= k <= m, got k={k}, m={m}")
    full = (k - 1) * comb(m, k - 1)
    if n < full:
        raise ValueError(f"n={n} below (k-1)C(m,k-1)={full}")
    base = [b for g in grouped_matrix(m, k).groups for b in g]
    heavy = [frozenset(c) for c in combinations(range(1, m + 1), k)]
    extra = [heavy[i % len(heavy)] for i in range(n - full)]
    return _require_valid(build_matrix(base + extra, m), k, 1, "saturated code")


def construct_spread(n: int, k: int, t: int) -> IncidenceMatrix:
    """n singleton columns dealt round-robin over m = k servers."""
    if n > t * k:
        raise ValueError(f"n={n} exceeds t*k={t * k}")
    if n < k:
        raise ValueError(f"n={n} is smaller than the batch size k={k}")
    M = build_matrix([{j % k + 1} for j in range(n)], k)
    return _require_valid(M, k, t, "spread code")


def construct_uniform_replication(m: int, c: int, r: int, k: Optional[int] = None, t: int = 1) -> IncidenceMatrix:
    """Every weight-c column, the full list repeated ``r`` times."""
    if not 1 <= c <= m or r < 1:
        raise ValueError(f"need 1 <= c <= m and r >= 1, got m={m}, c={c}, r={r}")
    supports = [frozenset(s) for s in combinations(range(1, m + 1), c)]
    M = build_matrix(supports * r, m)
    if k is not None:
        _require_valid(M, k, t, "uniform replication code")
    return M


def edge_code(G: Graph) -> IncidenceMatrix:
    """One weight-2 column per edge; row i is vertex i-1."""
    return build_matrix([{a + 1, b + 1} for a, b in G.edge_list()], G.v)


def triangle_code(G: Graph, triangles) -> IncidenceMatrix:
    """One weight-3 column per listed triangle of ``G``."""
    cols = []
    for tri in triangles:
        a, b, c = tri
        if len({a, b, c}) != 3 or not (G.has_edge(a, b) and G.has_edge(b, c) and G.has_edge(a, c)):
            raise ValueError(f"{tuple(tri)} is not a triangle of the graph")
        cols.append({a + 1, b + 1, c + 1})
    return build_matrix(cols, G.v)


def construct_path_pack(m: int) -> Graph:
    """floor(m/3) vertex-disjoint paths with two edges each."""
    if m < 3:
        raise ValueError(f"need m >= 3, got {m}")
    edges = []
    for i in range(m // 3):
        a = 3 * i
        edges += [(a, a + 1), (a + 1, a + 2)]
    return Graph(m, edges)


def construct_girth5(v: int, max_nodes: int = 2_000_000) -> Graph:
    """
    Triangle- and square-free graph with at least 2 + 3 floor((v-3)/2)
    edges: greedy insertion, lowest degree sum first, with backtracking.
    """
    target = girth5_edge_bound(v)
    adj = [set() for _ in range(v)]
    nodes = 0

    def addable(a, b):
        # no common neighbour (triangle) and no path of length 2 between
        # a neighbour of a and b (square)
        if b in adj[a] or adj[a] & adj[b]:
            return False
        for x in adj[a]:
            if adj[x] & adj[b]:
                return False
        return True

    def candidates():
        out = [(a, b) for a, b in combinations(range(v), 2) if addable(a, b)]
        out.sort(key=lambda e: (len(adj[e[0]]) + len(adj[e[1]]), e))
        return out

    def dfs(count, banned):
        nonlocal nodes
        nodes += 1
        if count >= target:
            return True
        if nodes > max_nodes:
            return False
        cand = [e for e in candidates() if e not in banned]
        if count + len(cand) < target:
            return False
        for i, (a, b) in enumerate(cand):
            adj[a].add(b)
            adj[b].add(a)
            if dfs(count + 1, banned | set(cand[:i])):
                return True
            adj[a].discard(b)
            adj[b].discard(a)
            if count + len(cand) - i - 1 < target:
                break
        return False

    if not dfs(0, frozenset()):
        raise ConstructionError(f"no girth-5 graph with {target} edges found on {v} vertices")
    G = Graph(v, [(a, b) for a in range(v) for b in adj[a] if a < b])
    if not G.has_girth5() or len(G) < target:
        raise ConstructionError("girth-5 construction produced an invalid graph")
    return G


def _check_forbidden(extra: Graph, k: int):
    if k == 9:
        for quad in combinations(range(extra.v), 4):
            if extra.edges_within(quad) >= 3:
                raise ForbiddenConfiguration(
                    quad, f"vertices {quad} carry {extra.edges_within(quad)} duplicate edges (at most 2 allowed)")
    else:
        tri = extra.find_triangle()
        if tri is not None:
            raise ForbiddenConfiguration(tri, f"duplicate graph has triangle {tri}")
        sq = extra.find_square()
        if sq is not None:
            raise ForbiddenConfiguration(sq, f"duplicate graph has 4-cycle {sq}")


def augment_pairs_code(m: int, extra: Graph, k: int, verify: bool = True) -> IncidenceMatrix:
    """
    All C(m, 2) pair columns plus one duplicate pair per edge of ``extra``,
    for t = 2 and k in {9, 10}. ``verify=False`` skips the self-check so the
    caller can inspect an invalid result.
    """
    if k not in (9, 10):
        raise ValueError(f"k must be 9 or 10, got {k}")
    if extra.v != m:
        raise ValueError(f"duplicate graph has {extra.v} vertices, expected {m}")
    _check_forbidden(extra, k)
    cols = [frozenset(p) for p in combinations(range(1, m + 1), 2)]
    cols += [frozenset((a + 1, b + 1)) for a, b in extra.edge_list()]
    M = build_matrix(cols, m)
    if verify:
        _require_valid(M, k, 2, "augmented pairs code")
    return M
