"""
Set systems, 0-1 incidence matrices and the grouped matrix.

Conventions: rows are servers, columns are items (the dual set system, where
each item is the block of servers storing it). Items and servers are
1-indexed in every public function; arrays are 0-indexed internally.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    'CodeParams', 'IncidenceMatrix', 'SetSystem', 'GroupedMatrix',
    'build_matrix', 'total_storage', 'span', 'dualize', 'grouped_matrix',
    'mask_to_set', 'set_to_mask', 'popcount',
]


def popcount(x: int) -> int:
    return bin(x).count('1')


def set_to_mask(servers: Iterable[int]) -> int:
    """1-indexed server set -> bitmask (bit i is server i+1)."""
    mask = 0
    for s in servers:
        mask |= 1 << (s - 1)
    return mask


def mask_to_set(mask: int) -> frozenset[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


@dataclass(frozen=True)
class CodeParams:
    """Parameters (n, k, m, t) of a combinatorial batch code; N is derived."""
    n: int
    k: int
    m: int
    t: int = 1

    def __post_init__(self):
        for name in ('n', 'k', 'm', 't'):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
        if self.k > self.n:
            raise ValueError(f"batch size k={self.k} exceeds item count n={self.n}")


class IncidenceMatrix:
    """
    Immutable m x n 0-1 matrix. Column j holds the servers storing item j+1.

    Duplicate columns are allowed and column order is significant; ``==`` is
    literal entry equality. Use :meth:`equivalent` for equality up to row and
    column permutations.
    """

    __slots__ = ('_bits', '_masks')

    def __init__(self, bits):
        arr = np.array(bits, dtype=np.uint8, copy=True)
        if arr.ndim != 2:
            raise ValueError("incidence matrix must be 2-dimensional")
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ValueError("incidence matrix entries must be 0 or 1")
        if arr.shape[1] and (arr.sum(axis=0) == 0).any():
            j = int(np.flatnonzero(arr.sum(axis=0) == 0)[0]) + 1
            raise ValueError(f"unstorable item: column {j} has no 1-entry")
        arr.setflags(write=False)
        self._bits = arr
        weights = 1 << np.arange(arr.shape[0], dtype=object)
        self._masks = tuple(int(sum(weights[arr[:, j] == 1])) for j in range(arr.shape[1]))

    @classmethod
    def from_masks(cls, masks: Sequence[int], m: int) -> IncidenceMatrix:
        bits = np.zeros((m, len(masks)), dtype=np.uint8)
        for j, mask in enumerate(masks):
            if mask <= 0 or mask >> m:
                raise ValueError(f"column {j + 1}: bitmask {mask} invalid for m={m}")
            for i in range(m):
                if mask >> i & 1:
                    bits[i, j] = 1
        return cls(bits)

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    @property
    def m(self) -> int:
        return self._bits.shape[0]

    @property
    def n(self) -> int:
        return self._bits.shape[1]

    @property
    def masks(self) -> tuple[int, ...]:
        """Column supports as bitmasks, bit i <-> server i+1."""
        return self._masks

    def column(self, j: int) -> frozenset[int]:
        """Servers (1-indexed) storing item ``j`` (1-indexed)."""
        if not 1 <= j <= self.n:
            raise IndexError(f"item {j} out of range 1..{self.n}")
        return mask_to_set(self._masks[j - 1])

    def blocks(self) -> list[frozenset[int]]:
        return [mask_to_set(x) for x in self._masks]

    def column_weights(self) -> np.ndarray:
        return self._bits.sum(axis=0)

    def delete_columns(self, items: Iterable[int]) -> IncidenceMatrix:
        drop = {j - 1 for j in items}
        keep = [j for j in range(self.n) if j not in drop]
        return IncidenceMatrix(self._bits[:, keep])

    def append_columns(self, other: IncidenceMatrix) -> IncidenceMatrix:
        if other.m != self.m:
            raise ValueError("row counts differ")
        return IncidenceMatrix(np.hstack([self._bits, other.bits]))

    def transpose(self) -> np.ndarray:
        return self._bits.T.copy()

    def canonical_form(self) -> tuple:
        """
        Invariant under row and column permutations: the lexicographically
        smallest sorted-column tuple over all row orders. Exponential in m;
        intended for tests on small matrices.
        """
        from itertools import permutations
        best = None
        for perm in permutations(range(self.m)):
            cols = sorted(tuple(int(self._bits[p, j]) for p in perm) for j in range(self.n))
            key = tuple(cols)
            if best is None or key < best:
                best = key
        return (self.m, self.n, best)

    def equivalent(self, other: IncidenceMatrix) -> bool:
        if (self.m, self.n, total_storage(self)) != (other.m, other.n, total_storage(other)):
            return False
        return self.canonical_form() == other.canonical_form()

    def __eq__(self, other):
        if not isinstance(other, IncidenceMatrix):
            return NotImplemented
        return self._bits.shape == other._bits.shape and bool((self._bits == other._bits).all())

    def __hash__(self):
        return hash((self._bits.shape, self._masks))

    def __repr__(self):
        return f"IncidenceMatrix(m={self.m}, n={self.n}, N={total_storage(self)})"

    def __str__(self):
        return '\n'.join(''.join(str(int(x)) for x in row) for row in self._bits)


@dataclass(frozen=True)
class SetSystem:
    """Ground set {1..ground_size} with an ordered list of blocks."""
    ground_size: int
    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        blocks = tuple(frozenset(b) for b in self.blocks)
        object.__setattr__(self, 'blocks', blocks)
        for i, b in enumerate(blocks):
            if any(not 1 <= x <= self.ground_size for x in b):
                raise ValueError(f"block {i + 1} is not a subset of 1..{self.ground_size}")

    def incidence(self) -> np.ndarray:
        """len(blocks) x ground_size 0-1 array (row i is block i)."""
        a = np.zeros((len(self.blocks), self.ground_size), dtype=np.uint8)
        for i, b in enumerate(self.blocks):
            for x in b:
                a[i, x - 1] = 1
        return a


@dataclass(frozen=True)
class GroupedMatrix:
    m: int
    k: int
    groups: tuple[tuple[frozenset[int], ...], ...] = field(repr=False)

    def flatten(self) -> IncidenceMatrix:
        return build_matrix([b for g in self.groups for b in g], self.m)


def build_matrix(blocks: Sequence[Iterable[int]], m: int) -> IncidenceMatrix:
    """Incidence matrix whose column j stores item j on the servers in ``blocks[j]``."""
    bits = np.zeros((m, len(blocks)), dtype=np.uint8)
    for j, b in enumerate(blocks):
        b = set(b)
        if not b:
            raise ValueError(f"unstorable item: block {j + 1} is empty")
        for s in b:
            if not 1 <= s <= m:
                raise ValueError(f"server index {s} out of range 1..{m} (block {j + 1})")
            bits[s - 1, j] = 1
    return IncidenceMatrix(bits)


def total_storage(M: IncidenceMatrix) -> int:
    """N: the number of 1-entries."""
    return int(M.bits.sum())


def span(M: IncidenceMatrix, items: Iterable[int]) -> frozenset[int]:
    """Union of the server sets of the selected items."""
    items = list(items)
    if not items:
        raise ValueError("span of an empty item selection")
    mask = 0
    for j in items:
        if not 1 <= j <= M.n:
            raise IndexError(f"item {j} out of range 1..{M.n}")
        mask |= M.masks[j - 1]
    return mask_to_set(mask)


def dualize(S: SetSystem) -> SetSystem:
    # point i of the dual is block i of S
    blocks = [frozenset(i + 1 for i, b in enumerate(S.blocks) if x in b)
              for x in range(1, S.ground_size + 1)]
    return SetSystem(len(S.blocks), tuple(blocks))


def grouped_matrix(m: int, k: int) -> GroupedMatrix:
    """
    The optimal code for n = (k-1) C(m, k-1): k-1 identical groups, each
    listing every (k-1)-subset of servers once in lexicographic order.
    Column numbering of the flattened matrix therefore runs group by group.
    """
    if not 2 <= k <= m:
        raise ValueError(f"grouped matrix needs 2 <= k <= m, got k={k}, m={m}")
    group = tuple(frozenset(c) for c in combinations(range(1, m + 1), k - 1))
    assert len(group) == comb(m, k - 1)
    return GroupedMatrix(m, k, (group,) * (k - 1))
