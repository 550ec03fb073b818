#!/usr/bin/env python3
"""
Worker Pool Component
Order-preserving parallel map over a process pool.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from components.run_config import default_threads

logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')


def resolve_thread_count(threads: Optional[int]) -> int:
    if threads is None:
        return default_threads()
    return max(1, int(threads))


def parallel_map(func: Callable[[T], R], items: Iterable[T], threads: Optional[int] = 1) -> List[R]:
    """Apply func to each item; results come back in input order.

    func must be a module-level callable so it can be pickled.
    """
    items = list(items)
    workers = min(resolve_thread_count(threads), len(items))
    if workers <= 1:
        return [func(item) for item in items]

    logger.info(f"Dispatching {len(items)} tasks to {workers} workers")
    chunksize = max(1, len(items) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items, chunksize=chunksize))
