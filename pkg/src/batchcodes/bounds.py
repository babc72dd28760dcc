"""
Closed-form optimal storage values and bounds.

Every query returns a :class:`BoundResult`. An UNKNOWN result is a normal
answer (no formula covers the parameters), never an exception. An infinite
maximum is reported as ``value == math.inf`` and ``is_unbounded``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from math import comb
from typing import NamedTuple, Optional, Union

from .core import CodeParams

__all__ = [
    'Kind', 'BoundResult', 'UNBOUNDED', 'TilingLevel', 'TilingBound',
    'optimal_N', 'optimal_N_t', 'uniform_max_n', 'uniform_max_n_t',
    'tiling_level', 'tiling_bound', 'girth5_edge_bound', 'level_for',
]

UNBOUNDED = math.inf


class Kind(enum.Enum):
    EXACT = 'EXACT'
    LOWER = 'LOWER'
    UPPER = 'UPPER'
    UNKNOWN = 'UNKNOWN'


@dataclass(frozen=True)
class BoundResult:
    value: Optional[Union[int, float]]
    kind: Kind
    provenance: str
    upper: Optional[int] = None     # set when a LOWER value comes with a matching upper bound
    note: str = ''

    def __post_init__(self):
        if (self.kind is Kind.UNKNOWN) != (self.value is None):
            raise ValueError("UNKNOWN results carry no value; all others must")

    @property
    def is_unbounded(self) -> bool:
        return self.value == UNBOUNDED

    @property
    def label(self) -> str:
        if self.is_unbounded:
            return 'UNBOUNDED'
        return self.kind.value

    def __str__(self):
        if self.kind is Kind.UNKNOWN:
            return f"UNKNOWN ({self.provenance})"
        if self.is_unbounded:
            return f"UNBOUNDED ({self.provenance})"
        text = f"{self.value} {self.kind.value}"
        if self.upper is not None:
            text += f", {self.upper} UPPER"
        return f"{text} ({self.provenance})"


def _unknown(why):
    return BoundResult(None, Kind.UNKNOWN, why)


def optimal_N(n: int, k: int, m: int) -> BoundResult:
    """Minimum total storage N(n, k, m) for single-probe codes (t = 1)."""
    CodeParams(n, k, m, 1)
    if k > m:
        raise ValueError(f"no code exists: k={k} items cannot be read from m={m} servers with t=1")
    if m == n:
        return BoundResult(n, Kind.EXACT, "m = n: identity")
    if m == k:
        return BoundResult(k * n - k * (k - 1), Kind.EXACT, "m = k")
    if m == n - 1:
        return BoundResult(n - 1 + k, Kind.EXACT, "m = n - 1")
    full = (k - 1) * comb(m, k - 1)
    if n >= full:
        return BoundResult(k * n - full, Kind.EXACT, "saturated, n >= (k-1)C(m,k-1)")
    if comb(m, k - 2) <= n < full:
        d = full - n
        l = d // (m - k + 1)
        return BoundResult((k - 1) * n - l, Kind.EXACT,
                           f"deletion range C(m,k-2) <= n <= (k-1)C(m,k-1), d={d}, l={l}")
    return _unknown("n below C(m,k-2)")


def optimal_N_t(n: int, k: int, m: int, t: int) -> BoundResult:
    """Minimum total storage with up to ``t`` reads per server."""
    if t == 1:
        return optimal_N(n, k, m)
    CodeParams(n, k, m, t)
    if k > t * m:
        raise ValueError(f"no code exists: k={k} > t*m={t * m}")
    if m == n:
        return BoundResult(n, Kind.EXACT, "m = n: identity")
    if m == k and n <= t * k:
        return BoundResult(n, Kind.EXACT, "m = k, n <= tk: round-robin singletons")
    return _unknown("no closed form for these parameters")


def uniform_max_n(m: int, c: int, k: int) -> BoundResult:
    """Largest n of a weight-c (rate 1/c) code with t = 1."""
    if not 1 <= c < m:
        raise ValueError(f"need 1 <= c < m, got c={c}, m={m}")
    if k <= c:
        return BoundResult(UNBOUNDED, Kind.EXACT, "k <= c: any k columns span >= k rows")
    if k == c + 1:
        return BoundResult(c * comb(m, c), Kind.EXACT, "k = c + 1")
    if k == c + 2:
        return BoundResult(comb(m, c), Kind.EXACT, "k = c + 2")
    if c == 2 and k == 5:
        lo = -(-(m * m - 1) // 4)
        hi = -(-(m * m + 2 * m - 3) // 4)
        return BoundResult(lo, Kind.LOWER, "c = 2, k = 5 sandwich", upper=hi)
    return BoundResult((k - 1) * comb(m, c) // comb(k - 1, c), Kind.UPPER,
                       "general upper bound (k-1)C(m,c)/C(k-1,c)",
                       note="transcription ambiguous: garbled fraction, read as (k-1)C(m,c)/C(k-1,c)")


def uniform_max_n_t(m: int, c: int, k: int, t: int) -> BoundResult:
    """Largest n of a weight-c code with up to ``t`` reads per server."""
    if not 1 <= c < m:
        raise ValueError(f"need 1 <= c < m, got c={c}, m={m}")
    if t < 1:
        raise ValueError("t must be >= 1")
    if c == 2 and k <= 2 * t:
        return BoundResult(UNBOUNDED, Kind.EXACT, "c = 2, k <= 2t")
    i = k - c * t
    if 1 <= i <= t:
        return BoundResult(c * t * comb(m, c), Kind.EXACT, f"k = ct + i, i={i}: every column ct times")
    j = k - c * t - t
    if 1 <= j <= t:
        return BoundResult(t * comb(m, c), Kind.EXACT, f"k = ct + t + j, j={j}: every column t times")
    if c == 2 and t == 2 and k == 9:
        return BoundResult(comb(m, 2) + 2 * (m // 3), Kind.LOWER,
                           "pairs plus disjoint 2-paths")
    if c == 2 and t == 2 and k == 10:
        return BoundResult(comb(m, 2) + 2 + 3 * ((m - 3) // 2), Kind.LOWER,
                           "pairs plus a triangle- and square-free graph",
                           note="disputed: averaging over 4-server sets gives n <= 8C(m,4)/C(m-2,2), "
                                "below this value at m = 7")
    if k > t * m:
        return BoundResult(comb(m, c) - 1, Kind.UPPER, "k > tm")
    return _unknown("no closed form for these parameters")


class TilingLevel(NamedTuple):
    g: int
    s: int
    e: int
    m: int
    triangles: int


def _level(d: int) -> TilingLevel:
    g = 1 + 2 * d * (d + 1)
    s = 2 * d * (d + 1)
    e = 4 * g + 2 * s - 8 * d - 4
    return TilingLevel(g, s, e, 8 * g + 4 * s, 16 * g + 4 * s + 4 * e)


def tiling_level(d: int) -> TilingLevel:
    """Octagon/square counts of a full tiling of depth ``d`` around one octagon."""
    if d < 1:
        raise ValueError(f"level must be >= 1, got {d}")
    return _level(d)


def level_for(m: int) -> int:
    """Largest d with 8 + 24 d (d + 1) <= m."""
    return (math.isqrt(576 + 96 * (m - 8)) - 24) // 48


_OCT = {1: 0, 2: 0, 3: 1, 4: 4, 5: 5, 6: 6, 7: 10, 8: 16}


@dataclass(frozen=True)
class TilingBound:
    m: int
    d: int
    g: int
    s: int
    e: int
    delta_prime: int
    m_prime: int
    j: int
    oct: int
    l_prime: int
    delta_second: int
    delta: int


def tiling_bound(m: int) -> TilingBound:
    """
    Lower bound on the number of weight-3 columns of a k = 6, t = 1 code on
    m servers, from a tiling of 8-vertex and 4-vertex units.

    The leftover m' vertices are charged with oct(j) + l'(j) + delta'' where
    j = m' mod 8, read as 8 when m' > 0 is a multiple of 8. Terms of the
    delta'' maximum whose octagons do not fit (8i > m') are skipped.
    """
    if m < 8:
        raise ValueError(f"tiling bound needs m >= 8, got {m}")
    d = level_for(m)
    g, s, e, used, dp = _level(d)
    mp = m - used
    if mp == 0:
        return TilingBound(m, d, g, s, e, dp, 0, 0, 0, 0, 0, dp)
    j = mp % 8 or 8
    oct_j = _OCT[j]
    lp = 1 if j == 1 else 4
    u = 0 if j in (1, 2) else 1
    best = 0
    for i in range(1, -(-mp // 8) + 1):
        if 8 * i > mp:
            continue
        sp = (mp - 8 * i) // 4
        if j in (1, 2) and i + sp + 1 == 8:
            l = 7
        elif j not in (1, 2) and i + u + sp == 8:
            l = u + sp + i
        else:
            l = u + sp + i - 1
        best = max(best, 8 * sp + 20 * i + 4 * l)
    return TilingBound(m, d, g, s, e, dp, mp, mp % 8, oct_j, lp, best, dp + oct_j + lp + best)


def girth5_edge_bound(v: int) -> int:
    """Edges guaranteed in some triangle- and square-free graph on v vertices."""
    if v < 3:
        raise ValueError(f"need v >= 3, got {v}")
    return 2 + 3 * ((v - 3) // 2)
