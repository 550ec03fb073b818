#!/usr/bin/env python3
"""
Cluster Component
Overlap sets, cluster index tuples, cluster posets and exact cluster numbers.

A k-cluster of length n is a permutation of length n with k marked
occurrences of the pattern, consecutive marks overlapping, covering every
entry. For a fixed tuple of starting positions the clusters are exactly the
linear extensions of the poset forced by the marked windows, so r_{n,k} is a
sum of linear-extension counts.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Dict, Iterator, List, Optional, Tuple

import pandas as pd

from components import run_config
from components.errors import DomainError, InvalidInputError, ResourceLimitError
from components.linext import Poset, count_linear_extensions
from components.perm_core import Pattern, Permutation
from components.worker_pool import parallel_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OverlapSet:
    """Shifts at which two occurrences of a length-m pattern can start."""
    m: int
    members: Tuple[int, ...]

    def __contains__(self, item: int) -> bool:
        return item in self.members

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class ClusterIndexTuple:
    """Starting positions (1-based) of the marked occurrences in a cluster."""
    indices: Tuple[int, ...]
    m: int

    @property
    def k(self) -> int:
        return len(self.indices)

    @property
    def length(self) -> int:
        return self.indices[-1] + self.m - 1

    def __iter__(self):
        return iter(self.indices)


@dataclass
class ClusterTable:
    """Exact cluster numbers r_{n,k} of one pattern for n <= max_n, k <= max_k."""
    pattern: Pattern
    max_n: int
    max_k: int
    values: Dict[Tuple[int, int], int] = field(default_factory=dict)

    def get(self, n: int, k: int) -> int:
        return self.values.get((n, k), 0)

    def rows(self) -> List[Tuple[str, int, int, int]]:
        """Nonzero entries as (pattern, n, k, r) sorted by n then k."""
        return [(str(self.pattern), n, k, r)
                for (n, k), r in sorted(self.values.items()) if r]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows(), columns=['pattern', 'n', 'k', 'r'])

    def to_dict(self) -> Dict:
        return {
            'pattern': str(self.pattern),
            'max_n': self.max_n,
            'max_k': self.max_k,
            'rows': [{'n': n, 'k': k, 'r': r} for _, n, k, r in self.rows()],
        }


def overlap_set(sigma: Pattern) -> OverlapSet:
    return OverlapSet(sigma.m, sigma.overlaps)


def is_nonoverlapping(sigma: Pattern) -> bool:
    return sigma.m >= 3 and sigma.overlaps == (sigma.m - 1,)


def min_overlap(sigma: Pattern) -> int:
    return sigma.overlaps[0]


def index_tuples(sigma: Pattern, n: int, k: int) -> List[ClusterIndexTuple]:
    """All (1 = i_1 < ... < i_k = n-m+1) with consecutive gaps in the overlap set."""
    if k < 1:
        raise InvalidInputError(f"k must be at least 1, got {k}")
    m = sigma.m
    target = n - m + 1
    if target < 1:
        return []
    gaps = sigma.overlaps
    found: List[ClusterIndexTuple] = []

    def extend(prefix: List[int]):
        last = prefix[-1]
        remaining = k - len(prefix)
        if remaining == 0:
            if last == target:
                found.append(ClusterIndexTuple(tuple(prefix), m))
            return
        for gap in gaps:
            nxt = last + gap
            # remaining-1 further gaps of at least gaps[0] must still fit
            if nxt + (remaining - 1) * gaps[0] > target:
                break
            if nxt + (remaining - 1) * gaps[-1] < target:
                continue
            prefix.append(nxt)
            extend(prefix)
            prefix.pop()

    extend([1])
    return found


def cluster_poset(sigma: Pattern, t: ClusterIndexTuple) -> Poset:
    """Poset on positions 0..n-1 generated by one increasing chain per marked window.

    The window starting at i orders its positions i-1+inverse[0] < ... < i-1+inverse[m-1].
    """
    inverse = sigma.inverse
    chains = [[start - 2 + position for position in inverse] for start in t.indices]
    return Poset.from_chains(t.length, chains)


def _tuple_extension_count(task: Tuple[Pattern, ClusterIndexTuple, int]) -> int:
    sigma, t, max_elements = task
    return count_linear_extensions(cluster_poset(sigma, t), max_elements=max_elements)


@lru_cache(maxsize=None)
def _cluster_number(sigma: Pattern, n: int, k: int, max_elements: int, dedupe: bool) -> int:
    tuples = index_tuples(sigma, n, k)
    if not dedupe:
        return sum(_tuple_extension_count((sigma, t, max_elements)) for t in tuples)
    shapes: Dict[Poset, int] = {}
    for t in tuples:
        poset = cluster_poset(sigma, t)
        shapes[poset] = shapes.get(poset, 0) + 1
    return sum(multiplicity * count_linear_extensions(poset, max_elements=max_elements)
               for poset, multiplicity in shapes.items())


def cluster_number(sigma: Pattern, n: int, k: int, threads: int = 1,
                   max_elements: Optional[int] = None, dedupe: bool = False) -> int:
    """r_{n,k}: sum of linear-extension counts over the index tuples of length n."""
    ceiling = run_config.LINEXT_MAX_ELEMENTS if max_elements is None else max_elements
    if threads > 1 and not dedupe:
        tuples = index_tuples(sigma, n, k)
        if len(tuples) > 1:
            return sum(parallel_map(_tuple_extension_count,
                                    [(sigma, t, ceiling) for t in tuples], threads))
    return _cluster_number(sigma, n, k, ceiling, dedupe)


def _cluster_fillings(sigma: Pattern, n: int, starts: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
    """Permutations of length n in which every window at the given starts matches sigma.

    Built left to right; each new entry is checked against the placed entries
    of every marked window containing it.
    """
    m = sigma.m
    pattern = sigma.entries
    covering: List[List[int]] = [[] for _ in range(n)]
    for start in starts:
        for offset in range(m):
            covering[start - 1 + offset].append(start - 1)
    word: List[int] = []
    used = [False] * (n + 1)

    def consistent(position: int, value: int) -> bool:
        for window in covering[position]:
            offset = position - window
            for other in range(window, position):
                earlier = pattern[other - window] < pattern[offset]
                if (word[other] < value) != earlier:
                    return False
        return True

    def extend() -> Iterator[Tuple[int, ...]]:
        position = len(word)
        if position == n:
            yield tuple(word)
            return
        for value in range(1, n + 1):
            if used[value] or not consistent(position, value):
                continue
            used[value] = True
            word.append(value)
            yield from extend()
            word.pop()
            used[value] = False

    yield from extend()


def _check_cluster_guard(n: int, max_n: Optional[int]):
    guard = run_config.CLUSTER_BRUTE_FORCE_MAX_N if max_n is None else max_n
    if n > guard:
        raise ResourceLimitError(f"Brute-force cluster enumeration at n={n} exceeds guard {guard}")


def enumerate_clusters_bruteforce(sigma: Pattern, n: int, k: int,
                                  max_n: Optional[int] = None) -> List[Tuple[Permutation, ClusterIndexTuple]]:
    """Every (pi; i_1..i_k) k-cluster of length n, by direct search over S_n."""
    _check_cluster_guard(n, max_n)
    clusters = []
    for t in index_tuples(sigma, n, k):
        for word in _cluster_fillings(sigma, n, t.indices):
            clusters.append((Permutation(word), t))
    return sorted(clusters, key=lambda pair: (pair[0].entries, pair[1].indices))


def cluster_numbers_bruteforce(sigma: Pattern, n: int, k: int, max_n: Optional[int] = None) -> int:
    _check_cluster_guard(n, max_n)
    return sum(sum(1 for _ in _cluster_fillings(sigma, n, t.indices))
               for t in index_tuples(sigma, n, k))


def d_k(sigma: Pattern, k: int, max_elements: Optional[int] = None) -> int:
    """Number of k-clusters of a non-overlapping pattern (all have length k(m-1)+1)."""
    if not is_nonoverlapping(sigma):
        raise DomainError(f"{sigma} is not non-overlapping")
    if k < 1:
        raise InvalidInputError(f"k must be at least 1, got {k}")
    return cluster_number(sigma, k * (sigma.m - 1) + 1, k, max_elements=max_elements)


def f(a: int, b: int, m: int) -> int:
    """C(a+b-2, a-1) * C(2m-a-b, m-b), the 2-cluster count for endpoints a, b."""
    if not (1 <= a <= m and 1 <= b <= m):
        raise InvalidInputError(f"f({a}, {b}) needs 1 <= a, b <= m = {m}")
    return comb(a + b - 2, a - 1) * comb(2 * m - a - b, m - b)


def cluster_table(sigma: Pattern, max_n: int, max_k: int, cache=None,
                  threads: int = 1, max_elements: Optional[int] = None) -> ClusterTable:
    """All r_{n,k} for m <= n <= max_n and 1 <= k <= max_k.

    cache is an optional CacheManager; known entries are reused and new ones stored.
    """
    known: Dict[Tuple[int, int], int] = cache.get_cluster_numbers(sigma) if cache else {}
    table = ClusterTable(sigma, max_n, max_k)
    fresh = 0
    for n in range(sigma.m, max_n + 1):
        for k in range(1, max_k + 1):
            if (n, k) in known:
                table.values[(n, k)] = known[(n, k)]
                continue
            if not index_tuples(sigma, n, k):
                continue
            table.values[(n, k)] = cluster_number(sigma, n, k, threads=threads,
                                                  max_elements=max_elements)
            fresh += 1
    if cache and fresh:
        cache.store_cluster_numbers(sigma, table.values)
    logger.info(f"Cluster table for {sigma}: {len(table.values)} entries ({fresh} computed)")
    return table


def tau_pattern(m: int) -> Pattern:
    """12...(m-2)m(m-1)."""
    return Pattern.of(list(range(1, m - 1)) + [m, m - 1])


def upsilon_pattern(m: int) -> Pattern:
    """134...m2."""
    return Pattern.of([1] + list(range(3, m + 1)) + [2])


def verify_closed_form_d(m: int) -> Dict:
    """d_2(tau) = m, d_2(upsilon) = C(2m-3, m-2), d_3(upsilon) = d_2(upsilon) C(3m-4, m-2)."""
    tau, upsilon = tau_pattern(m), upsilon_pattern(m)
    d2_tau, d2_ups, d3_ups = d_k(tau, 2), d_k(upsilon, 2), d_k(upsilon, 3)
    checks = {
        'd2_tau': {'value': d2_tau, 'expected': m},
        'd2_upsilon': {'value': d2_ups, 'expected': comb(2 * m - 3, m - 2)},
        'd3_upsilon': {'value': d3_ups, 'expected': comb(2 * m - 3, m - 2) * comb(3 * m - 4, m - 2)},
    }
    passed = all(c['value'] == c['expected'] for c in checks.values())
    return {'m': m, 'tau': str(tau), 'upsilon': str(upsilon), 'checks': checks,
            'status': 'pass' if passed else 'fail'}


def verify_f_orderings(m: int) -> Dict:
    """Strict orderings of f(a, b) along rows, the diagonal and columns, and its symmetry."""
    violations = []
    for a in range(1, m):
        for b in range(a + 1, m):
            if not f(a, b, m) > f(a, b + 1, m):
                violations.append({'rule': 'row', 'a': a, 'b': b})
    for a in range(2, m // 2 + 1):
        if not f(a - 1, a, m) > f(a, a + 1, m):
            violations.append({'rule': 'diagonal', 'a': a})
    for a in range(2, m + 1):
        for b in range(a + 1, m + 1):
            if not f(a, b, m) > f(a - 1, b, m):
                violations.append({'rule': 'column', 'a': a, 'b': b})
    for a in range(1, m + 1):
        for b in range(1, m + 1):
            if f(a, b, m) != f(m + 1 - b, m + 1 - a, m):
                violations.append({'rule': 'symmetry', 'a': a, 'b': b})
    return {'m': m, 'violations': violations, 'status': 'fail' if violations else 'pass'}
