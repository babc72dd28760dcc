"""
Validity of (n, N, k, m, t) batch codes.

Two independent routes:

* ``naive_is_cbc`` enumerates every k-subset of items and runs a capacitated
  bipartite matching on each (the definition, literally).
* ``is_cbc`` uses the Hall-type deficiency criterion: the code is valid iff
  for every server set R with t|R| < k, at most t|R| items are stored
  entirely inside R. Only C(m, <= ceil(k/t) - 1) server sets are checked.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .core import IncidenceMatrix, span

__all__ = [
    'RetrievalAssignment', 'Violation', 'retrieval_assignment', 'is_cbc',
    'naive_is_cbc', 'find_transversal', 'deficient_sets', 'NAIVE_BUDGET',
    'BudgetExceeded',
]

NAIVE_BUDGET = 5_000_000


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class RetrievalAssignment:
    """(item, server) pairs, both 1-indexed, one pair per requested item."""
    pairs: tuple[tuple[int, int], ...]

    def load(self) -> Counter:
        return Counter(s for _, s in self.pairs)


@dataclass(frozen=True)
class Violation:
    """Items that cannot all be served: more than t * |spanned| of them."""
    items: frozenset[int]
    spanned: frozenset[int]

    def describe(self) -> str:
        return f"{len(self.items)} items span {len(self.spanned)} servers"


def _match(adj: Sequence[Sequence[int]], t: int):
    """
    Capacitated matching (server capacity t, item capacity 1) by augmenting
    paths; items are processed in order and servers scanned ascending.
    Returns (assignment list, None) or (None, deficient item positions).
    """
    owner: dict[int, list[int]] = {}   # server -> matched item positions
    assigned = [-1] * len(adj)

    def augment(u, seen, explored):
        explored.append(u)
        for s in adj[u]:
            if s in seen:
                continue
            seen.add(s)
            held = owner.setdefault(s, [])
            if len(held) < t:
                held.append(u)
                assigned[u] = s
                return True
            for w in list(held):
                if augment(w, seen, explored):
                    held.remove(w)
                    held.append(u)
                    assigned[u] = s
                    return True
        return False

    for u in range(len(adj)):
        explored: list[int] = []
        if not augment(u, set(), explored):
            return None, explored
    return assigned, None


def _check_items(M: IncidenceMatrix, items: Iterable[int]) -> list[int]:
    items = list(items)
    for j in items:
        if not 1 <= j <= M.n:
            raise IndexError(f"item {j} out of range 1..{M.n}")
    if len(set(items)) != len(items):
        raise ValueError("requested items must be distinct")
    return items


def _adjacency(M: IncidenceMatrix, items: Sequence[int]) -> list[list[int]]:
    adj = []
    for j in items:
        mask = M.masks[j - 1]
        adj.append([i for i in range(M.m) if mask >> i & 1])
    return adj


def retrieval_assignment(M: IncidenceMatrix, items: Iterable[int], t: int = 1):
    """
    Read each requested item from a server storing it, at most ``t`` reads
    per server. Returns a :class:`RetrievalAssignment`, or a
    :class:`Violation` (a Hall-deficient subset of the request) when no
    such reading schedule exists.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    items = _check_items(M, items)
    assigned, deficient = _match(_adjacency(M, items), t)
    if assigned is None:
        bad = frozenset(items[u] for u in deficient)
        return Violation(bad, span(M, bad))
    return RetrievalAssignment(tuple((j, s + 1) for j, s in zip(items, assigned)))


def find_transversal(M: IncidenceMatrix, items: Iterable[int]):
    """
    Positions (row, column), 1-indexed, of a transversal of ones in the
    columns ``items``: distinct rows, one per column. None if there is none.
    """
    items = _check_items(M, items)
    assigned, _ = _match(_adjacency(M, items), 1)
    if assigned is None:
        return None
    return [(s + 1, j) for j, s in zip(items, assigned)]


def deficient_sets(M: IncidenceMatrix, k: int, t: int = 1):
    """
    Yield server bitmasks R with t|R| < k holding more than t|R| items,
    ordered by size and then lexicographically on the sorted server tuple.
    """
    distinct = Counter(M.masks)
    r_max = min(M.m, -(-k // t) - 1)
    for r in range(1, r_max + 1):
        cap = t * r
        for rows in combinations(range(M.m), r):
            R = 0
            for i in rows:
                R |= 1 << i
            inside = 0
            for mask, mult in distinct.items():
                if mask & ~R == 0:
                    inside += mult
            if inside > cap:
                yield R


def is_cbc(M: IncidenceMatrix, k: int, t: int = 1):
    """
    Returns ``(valid, witness)``. On failure the witness is a Violation made
    of the items stored inside the first deficient server set, truncated to
    min(count, k) items.
    """
    if k < 1 or t < 1:
        raise ValueError("k and t must be positive")
    if k > M.n:
        raise ValueError(f"k={k} exceeds the number of items n={M.n}")
    for R in deficient_sets(M, k, t):
        inside = [j + 1 for j, mask in enumerate(M.masks) if mask & ~R == 0]
        chosen = frozenset(inside[:min(len(inside), k)])
        return False, Violation(chosen, span(M, chosen))
    return True, None


def naive_is_cbc(M: IncidenceMatrix, k: int, t: int = 1, budget: int = NAIVE_BUDGET) -> bool:
    """Ground truth by enumerating every k-subset of items."""
    if k > M.n:
        raise ValueError(f"k={k} exceeds the number of items n={M.n}")
    if comb(M.n, k) > budget:
        raise BudgetExceeded(f"instance too large for naive oracle: C({M.n},{k}) > {budget}")
    adj = _adjacency(M, range(1, M.n + 1))
    for subset in combinations(range(M.n), k):
        assigned, _ = _match([adj[j] for j in subset], t)
        if assigned is None:
            return False
    return True
