"""Size-ordered enumeration of candidate fraud sets.

The per-hypothesis likelihood sums range over the reduced power set of an
identity's vertices (every subset except the empty set and the full set),
optionally truncated to subsets of at most ``m_cap`` vertices. Tables are
grouped by ascending subset size and, within each size, follow a
revolving-door order: consecutive subsets differ by exchanging exactly one
element. Tables depend only on (n, m_cap), so they are built once and
reused across every pair of identities.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .errors import DomainError


def reduced_power_set_size(n: int) -> int:
    """Size of the reduced power set: 2**n - 2, or 0 when n <= 1."""
    if n < 0:
        raise DomainError("vertex count must be >= 0")
    return max(2**n - 2, 0)


def _revolving_door(n: int, k: int) -> list[tuple[int, ...]]:
    # Classic minimal-change recursion: G(n, k) = G(n-1, k) followed by
    # reversed G(n-1, k-1) with n-1 appended. Starts at the lexicographically
    # first k-subset; consecutive subsets swap exactly one element.
    if k == 0:
        return [()]
    if k == n:
        return [tuple(range(n))]
    head = _revolving_door(n - 1, k)
    tail = [s + (n - 1,) for s in reversed(_revolving_door(n - 1, k - 1))]
    return head + tail


@dataclass(frozen=True)
class FraudSetTable:
    """Ordered enumeration of candidate fraud sets for one identity size.

    ``subsets`` lists vertex-index tuples of sizes 1..min(m_cap, n-1),
    grouped by ascending size, revolving-door ordered within each size.
    ``indicator`` is the (term_count, n) float 0/1 membership matrix used
    by the vectorized likelihood engine.
    """

    n: int
    m_cap: int
    subsets: tuple[tuple[int, ...], ...]
    indicator: np.ndarray

    @property
    def term_count(self) -> int:
        return len(self.subsets)

    @property
    def max_size(self) -> int:
        return min(self.m_cap, self.n - 1)


def build_fraud_set_table(n: int, m_cap: int) -> FraudSetTable:
    """Enumerate fraud sets of size 1..min(m_cap, n-1) over ``n`` vertices.

    For n < 2 the table is empty (no proper non-empty subsets exist) and
    hypotheses that sum over this side are treated as impossible.
    """
    if m_cap < 1:
        raise DomainError("m_cap must be >= 1")
    subsets: list[tuple[int, ...]] = []
    if n >= 2:
        for k in range(1, min(m_cap, n - 1) + 1):
            subsets.append, subsets.extend(_revolving_door(n, k))[0:0]
    indicator = np.zeros((len(subsets), max(n, 0)), dtype=np.float64)
    for row, s in enumerate(subsets):
        indicator[row, list(s)] = 1.0
    indicator.flags.writeable = False
    return FraudSetTable(n=n, m_cap=m_cap, subsets=tuple(subsets), indicator=indicator)


@lru_cache(maxsize=None)
def fraud_set_table(n: int, m_cap: int) -> FraudSetTable:
    """Cached table lookup keyed by (n, m_cap); safe to share across threads."""
    return build_fraud_set_table(n, m_cap)


def expected_term_count(n: int, m_cap: int) -> int:
    """Number of subsets a table for (n, m_cap) must contain."""
    if n < 2:
        return 0
    return sum(comb(n, k) for k in range(1, min(m_cap, n - 1) + 1))
