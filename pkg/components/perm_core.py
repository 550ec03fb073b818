#!/usr/bin/env python3
"""
Permutation Core Component
Permutations, consecutive patterns, symmetries, occurrence counting and
the exhaustive avoider oracle.

Permutations use one-line notation with values 1..n.
"""

import logging
import itertools
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from math import factorial
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from components import run_config
from components.errors import InvalidInputError, ResourceLimitError
from components.worker_pool import parallel_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Permutation:
    """A permutation of {1..n} in one-line notation."""
    entries: Tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(x) for x in self.entries)
        if sorted(entries) != list(range(1, len(entries) + 1)):
            raise InvalidInputError(f"Not a permutation of 1..{len(entries)}: {entries}")
        object.__setattr__(self, 'entries', entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, index):
        return self.entries[index]

    def __str__(self) -> str:
        return _format_entries(self.entries)

    @property
    def n(self) -> int:
        return len(self.entries)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.entries)
        for position, value in enumerate(self.entries, start=1):
            inv[value - 1] = position
        return Permutation(tuple(inv))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        return cls(_parse_entries(text))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))


@dataclass(frozen=True, order=True)
class Pattern:
    """A permutation of length m >= 2 used as a consecutive pattern."""
    perm: Permutation

    def __post_init__(self):
        perm = self.perm if isinstance(self.perm, Permutation) else Permutation(tuple(self.perm))
        if len(perm) < 2:
            raise InvalidInputError(f"Pattern length must be at least 2, got {len(perm)}")
        object.__setattr__(self, 'perm', perm)

    @property
    def m(self) -> int:
        return len(self.perm)

    @property
    def entries(self) -> Tuple[int, ...]:
        return self.perm.entries

    @cached_property
    def inverse(self) -> Tuple[int, ...]:
        """Positions of the values 1..m, so inverse[v-1] is where v sits (1-based)."""
        return self.perm.inverse().entries

    @cached_property
    def overlaps(self) -> Tuple[int, ...]:
        """Shifts i with red(suffix of length m-i) = red(prefix of length m-i)."""
        m = self.m
        return tuple(i for i in range(1, m)
                     if reduce(self.entries[i:]) == reduce(self.entries[:m - i]))

    def is_monotone(self) -> bool:
        increasing = Permutation.identity(self.m).entries
        return self.entries in (increasing, increasing[::-1])

    def __len__(self) -> int:
        return self.m

    def __str__(self) -> str:
        return str(self.perm)

    def __repr__(self) -> str:
        return f"Pattern({self})"

    # Patterns travel through process pools; cached_property values are not kept.
    def __getstate__(self):
        return {'perm': self.perm}

    def __setstate__(self, state):
        object.__setattr__(self, 'perm', state['perm'])

    @classmethod
    def parse(cls, text: str) -> "Pattern":
        return cls(Permutation(_parse_entries(text)))

    @classmethod
    def of(cls, entries: Sequence[int]) -> "Pattern":
        return cls(Permutation(tuple(entries)))


def _parse_entries(text: str) -> Tuple[int, ...]:
    text = str(text).strip()
    if not text:
        raise InvalidInputError("Empty permutation string")
    try:
        if ',' in text:
            return tuple(int(part) for part in text.split(','))
        if not text.isdigit():
            raise ValueError(text)
        return tuple(int(ch) for ch in text)
    except ValueError:
        raise InvalidInputError(f"Cannot parse permutation {text!r}")


def _format_entries(entries: Sequence[int]) -> str:
    if len(entries) <= 9:
        return ''.join(str(x) for x in entries)
    return ','.join(str(x) for x in entries)


def reduce(word: Sequence[int]) -> Permutation:
    """Rank relabeling: smallest entry becomes 1, next smallest 2, and so on."""
    word = tuple(word)
    if not word:
        raise InvalidInputError("Cannot reduce an empty word")
    if len(set(word)) != len(word):
        raise InvalidInputError(f"Word has repeated entries: {word}")
    ranks = {value: rank for rank, value in enumerate(sorted(word), start=1)}
    return Permutation(tuple(ranks[x] for x in word))


def reverse(sigma: Pattern) -> Pattern:
    return Pattern(Permutation(tuple(reversed(sigma.entries))))


def complement(sigma: Pattern) -> Pattern:
    m = sigma.m
    return Pattern(Permutation(tuple(m + 1 - x for x in sigma.entries)))


def symmetry_orbit(sigma: Pattern) -> List[Pattern]:
    """Distinct images under identity, reverse, complement and their composite, sorted."""
    images = {sigma, reverse(sigma), complement(sigma), reverse(complement(sigma))}
    return sorted(images)


def canonical_representative(sigma: Pattern) -> Pattern:
    """Smallest orbit member with first < last and first + last <= m + 1."""
    m = sigma.m
    qualifying = [tau for tau in symmetry_orbit(sigma)
                  if tau.entries[0] < tau.entries[-1] and tau.entries[0] + tau.entries[-1] <= m + 1]
    return qualifying[0]


def all_patterns(m: int) -> List[Pattern]:
    """S_m in lexicographic order."""
    return [Pattern(Permutation(p)) for p in itertools.permutations(range(1, m + 1))]


def _window_matches(inverse: Sequence[int], word: Sequence[int], start: int) -> bool:
    # Window matches sigma iff its entries at the inverse positions increase.
    previous = word[start + inverse[0] - 1]
    for position in inverse[1:]:
        current = word[start + position - 1]
        if current < previous:
            return False
        previous = current
    return True


def occurrences(sigma: Pattern, pi) -> int:
    """Number of windows of pi whose reduction equals sigma."""
    word = pi.entries if isinstance(pi, Permutation) else tuple(pi)
    m = sigma.m
    inverse = sigma.inverse
    return sum(1 for i in range(len(word) - m + 1) if _window_matches(inverse, word, i))


def _check_guard(n: int, max_n: Optional[int]):
    guard = run_config.BRUTE_FORCE_MAX_N if max_n is None else max_n
    if n < 0:
        raise InvalidInputError(f"n must be non-negative, got {n}")
    if n > guard:
        raise ResourceLimitError(f"Brute force over S_{n} exceeds guard n <= {guard}")


def _count_avoiders_with_prefix(task: Tuple[Tuple[int, ...], Tuple[int, ...], int]) -> int:
    """Count avoiders of length n that start with the given prefix (depth-first, pruned)."""
    inverse, prefix, n = task
    m = len(inverse)
    word = list(prefix)
    used = [False] * (n + 1)
    for value in prefix:
        used[value] = True
    for end in range(m, len(word) + 1):
        if _window_matches(inverse, word, end - m):
            return 0

    def extend() -> int:
        if len(word) == n:
            return 1
        total = 0
        for value in range(1, n + 1):
            if used[value]:
                continue
            word.append(value)
            if len(word) < m or not _window_matches(inverse, word, len(word) - m):
                used[value] = True
                total += extend()
                used[value] = False
            word.pop()
        return total

    return extend()


def count_avoiders_bruteforce(sigma: Pattern, n: int, max_n: Optional[int] = None,
                              threads: int = 1) -> int:
    """Exhaustive count of permutations of length n with no occurrence of sigma.

    The search visits S_n in lexicographic order and prunes a branch as soon as
    its last window matches. With threads > 1 the branches are split by first entry.
    """
    _check_guard(n, max_n)
    if n < sigma.m:
        return factorial(n)
    tasks = [(sigma.inverse, (first,), n) for first in range(1, n + 1)]
    counts = parallel_map(_count_avoiders_with_prefix, tasks, threads)
    total = sum(counts)
    logger.debug(f"Brute force alpha_{n}({sigma}) = {total}")
    return total


def occurrence_histogram_bruteforce(sigma: Pattern, n: int, max_n: Optional[int] = None) -> Dict[int, int]:
    """Map c -> number of permutations of length n with exactly c occurrences."""
    _check_guard(n, max_n)
    histogram = Counter(occurrences(sigma, p) for p in itertools.permutations(range(1, n + 1)))
    return dict(sorted(histogram.items()))
