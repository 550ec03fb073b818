#!/usr/bin/env python3
"""
Equivalence Classifier Component
Groups the patterns of one length by their exact avoider counts.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from components.egf import avoider_counts, default_order
from components.errors import InvalidInputError
from components.perm_core import Pattern, all_patterns, symmetry_orbit
from components.worker_pool import parallel_map

logger = logging.getLogger(__name__)

KNOWN_CLASS_COUNTS = {3: 2, 4: 7, 5: 25, 6: 92}


def _alpha_task(task: Tuple[Pattern, int]) -> Tuple[int, ...]:
    sigma, N = task
    return tuple(avoider_counts(sigma, N))


def class_representative(members: List[Pattern]) -> Pattern:
    """Lexicographically smallest member with first < last and first + last <= m + 1."""
    m = members[0].m
    qualifying = [sigma for sigma in sorted(members)
                  if sigma.entries[0] < sigma.entries[-1]
                  and sigma.entries[0] + sigma.entries[-1] <= m + 1]
    return qualifying[0] if qualifying else min(members)


@dataclass
class EquivalenceClass:
    representative: Pattern
    members: List[Pattern]
    alphas: Tuple[int, ...]

    def to_dict(self) -> Dict:
        return {'representative': str(self.representative),
                'members': [str(sigma) for sigma in self.members]}


@dataclass
class EquivClassReport:
    m: int
    N: int
    stabilized_at: int
    classes: List[EquivalenceClass] = field(default_factory=list)
    status: str = "ok"
    expected_count: Optional[int] = None

    @property
    def representatives(self) -> List[Pattern]:
        return [cls.representative for cls in self.classes]

    def class_of(self, sigma: Pattern) -> EquivalenceClass:
        for cls in self.classes:
            if sigma in cls.members:
                return cls
        raise InvalidInputError(f"{sigma} is not a pattern of length {self.m}")

    def to_dict(self) -> Dict:
        return {
            'm': self.m,
            'N': self.N,
            'stabilized_at': self.stabilized_at,
            'count': len(self.classes),
            'expected_count': self.expected_count,
            'status': self.status,
            'classes': [cls.to_dict() for cls in self.classes],
        }

    def rows(self) -> List[Tuple[int, str, str]]:
        return [(self.m, str(cls.representative), str(sigma))
                for cls in self.classes for sigma in cls.members]


class EquivalenceClassifier:
    """c-Wilf classification through exact avoider counts, one computation per symmetry orbit."""

    def __init__(self, cache=None, threads: int = 1):
        self.cache = cache
        self.threads = threads
        logger.info("Equivalence Classifier initialized")

    def alpha_vectors(self, patterns: List[Pattern], N: int) -> Dict[Pattern, Tuple[int, ...]]:
        """Avoider counts through N for each pattern, shared across each symmetry orbit."""
        orbit_heads: Dict[Pattern, List[Pattern]] = {}
        for sigma in patterns:
            orbit_heads.setdefault(symmetry_orbit(sigma)[0], []).append(sigma)

        heads = sorted(orbit_heads)
        vectors: Dict[Pattern, Tuple[int, ...]] = {}
        missing = []
        for head in heads:
            cached = self.cache.get_alpha_vector(head, N) if self.cache else None
            if cached is not None:
                vectors[head] = tuple(cached)
            else:
                missing.append(head)

        computed = parallel_map(_alpha_task, [(head, N) for head in missing], self.threads)
        for head, alphas in zip(missing, computed):
            vectors[head] = alphas
            if self.cache:
                self.cache.store_alpha_vector(head, alphas)

        return {sigma: vectors[head] for head, members in orbit_heads.items() for sigma in members}

    def classify(self, m: int, N: Optional[int] = None) -> EquivClassReport:
        if m < 2:
            raise InvalidInputError(f"Pattern length must be at least 2, got {m}")
        N = default_order(m) if N is None else N
        patterns = all_patterns(m)
        vectors = self.alpha_vectors(patterns, N)

        groups: Dict[Tuple[int, ...], List[Pattern]] = {}
        for sigma in patterns:
            groups.setdefault(vectors[sigma], []).append(sigma)

        classes = [EquivalenceClass(class_representative(members), sorted(members), alphas)
                   for alphas, members in groups.items()]
        classes.sort(key=lambda cls: cls.representative)

        final_count = len(classes)
        stabilized_at = next(n for n in range(N + 1)
                             if len({vectors[sigma][:n + 1] for sigma in patterns}) == final_count)

        expected = KNOWN_CLASS_COUNTS.get(m)
        status = "ok"
        if expected is not None and final_count != expected:
            status = "warning"
            logger.warning(f"Found {final_count} classes for m={m} at N={N}, expected {expected}")
        logger.info(f"m={m}: {final_count} classes, stable from N={stabilized_at}")
        return EquivClassReport(m, N, stabilized_at, classes, status, expected)
