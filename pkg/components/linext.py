#!/usr/bin/env python3
"""
Linear Extension Component
Finite posets and exact counting of their linear extensions.

Counting is a dynamic program over order ideals: an ideal is a bitmask of
placed elements, and each level adds one minimal element of the remainder.
Only ideals reachable that way are ever stored.
"""

import logging
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from components import run_config
from components.errors import InvalidInputError, InvalidPosetError, ResourceLimitError

logger = logging.getLogger(__name__)


class Poset:
    """Strict partial order on {0..size-1}, stored as its reachability matrix."""

    def __init__(self, size: int, relations: Iterable[Tuple[int, int]] = ()):
        if size < 0:
            raise InvalidPosetError(f"Poset size must be non-negative, got {size}")
        self.size = size
        reach = np.zeros((size, size), dtype=bool)
        for x, y in relations:
            if not (0 <= x < size and 0 <= y < size):
                raise InvalidPosetError(f"Relation ({x}, {y}) outside ground set of size {size}")
            reach[x, y] = True
        # Warshall closure
        for k in range(size):
            reach |= np.outer(reach[:, k], reach[k, :])
        if size and reach.diagonal().any():
            raise InvalidPosetError("Order relation contains a cycle")
        reach.setflags(write=False)
        self.reach = reach

    @classmethod
    def chain(cls, size: int) -> "Poset":
        return cls(size, [(i, i + 1) for i in range(size - 1)])

    @classmethod
    def antichain(cls, size: int) -> "Poset":
        return cls(size)

    @classmethod
    def from_chains(cls, size: int, chains: Iterable[Sequence[int]]) -> "Poset":
        """Poset generated by requiring each listed chain to increase."""
        relations = []
        for chain in chains:
            relations.extend(zip(chain, chain[1:]))
        return cls(size, relations)

    def less_than(self, x: int, y: int) -> bool:
        return bool(self.reach[x, y])

    def covers(self) -> List[Tuple[int, int]]:
        """Pairs (x, y) with x < y and nothing strictly between them."""
        reach = self.reach
        # x < z < y for some z
        between = (reach.astype(np.int64) @ reach.astype(np.int64)) > 0
        cover = reach & ~between
        return [(int(x), int(y)) for x, y in zip(*np.nonzero(cover))]

    def relations(self) -> List[Tuple[int, int]]:
        return [(int(x), int(y)) for x, y in zip(*np.nonzero(self.reach))]

    def is_total_order(self) -> bool:
        comparable = self.reach | self.reach.T
        return int(comparable.sum()) == self.size * (self.size - 1)

    def relabel(self, mapping: Sequence[int]) -> "Poset":
        """Isomorphic copy in which element x is renamed mapping[x]."""
        if sorted(mapping) != list(range(self.size)):
            raise InvalidInputError("Relabeling must be a bijection of the ground set")
        return Poset(self.size, [(mapping[x], mapping[y]) for x, y in self.relations()])

    def predecessor_masks(self) -> Tuple[int, ...]:
        """Bitmask of the elements below each element."""
        masks = []
        for y in range(self.size):
            mask = 0
            for x in np.nonzero(self.reach[:, y])[0]:
                mask |= 1 << int(x)
            masks.append(mask)
        return tuple(masks)

    def key(self) -> Tuple[int, Tuple[Tuple[int, int], ...]]:
        return (self.size, tuple(self.covers()))

    def __eq__(self, other) -> bool:
        return isinstance(other, Poset) and self.size == other.size and bool(np.array_equal(self.reach, other.reach))

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Poset(size={self.size}, covers={len(self.covers())})"


@lru_cache(maxsize=100000)
def _count_from_masks(size: int, predecessors: Tuple[int, ...]) -> int:
    counts: Dict[int, int] = {0: 1}
    for _ in range(size):
        next_counts: Dict[int, int] = {}
        for ideal, ways in counts.items():
            for element in range(size):
                bit = 1 << element
                if ideal & bit:
                    continue
                pred = predecessors[element]
                if (pred & ideal) == pred:
                    grown = ideal | bit
                    next_counts[grown] = next_counts.get(grown, 0) + ways
        counts = next_counts
    return counts.get((1 << size) - 1, 0)


def count_linear_extensions(poset: Poset, max_elements: Optional[int] = None) -> int:
    """Exact number of order-preserving bijections onto {1..size}."""
    ceiling = run_config.LINEXT_MAX_ELEMENTS if max_elements is None else max_elements
    if poset.size > ceiling:
        raise ResourceLimitError(f"Poset has {poset.size} elements, ceiling is {ceiling}")
    if poset.size == 0:
        return 1
    return _count_from_masks(poset.size, poset.predecessor_masks())


def is_linear_extension(poset: Poset, values) -> bool:
    """True iff values is a bijection onto 1..size and x < y in the poset implies values[x] < values[y]."""
    values = tuple(values)
    if len(values) != poset.size:
        raise InvalidInputError(f"Expected {poset.size} values, got {len(values)}")
    if sorted(values) != list(range(1, poset.size + 1)):
        return False
    if poset.size == 0:
        return True
    labels = np.asarray(values)
    increasing = labels[:, None] < labels[None, :]
    return not bool((poset.reach & ~increasing).any())
