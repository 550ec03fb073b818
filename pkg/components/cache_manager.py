#!/usr/bin/env python3
"""
Cache Manager Component
Pickle-backed caches for cluster numbers and avoider-count vectors, so long
classification runs can be resumed without recomputing.
"""

import os
import pickle
import logging
import threading
from datetime import datetime
from typing import Dict, Optional, Tuple

from components.perm_core import Pattern

logger = logging.getLogger(__name__)


class CacheManager:
    """Manages on-disk caches keyed by pattern string."""

    def __init__(self, cache_dir: str = "cache"):
        """Initialize cache manager."""
        self.cache_dir = cache_dir
        self.clusters_cache_file = os.path.join(cache_dir, "cluster_numbers.pkl")
        self.alphas_cache_file = os.path.join(cache_dir, "alpha_vectors.pkl")
        self._lock = threading.Lock()

        os.makedirs(cache_dir, exist_ok=True)

        self.clusters_cache = self._load_cache(self.clusters_cache_file)
        self.alphas_cache = self._load_cache(self.alphas_cache_file)

        logger.info("Cache Manager initialized successfully")

    def _load_cache(self, cache_file: str) -> Dict:
        """Load cache from file."""
        try:
            if os.path.exists(cache_file):
                with open(cache_file, 'rb') as f:
                    cache = pickle.load(f)
                    logger.info(f"Loaded cache from {cache_file}")
                    return cache
        except Exception as e:
            logger.warning(f"Could not load cache from {cache_file}: {str(e)}")

        return {}

    def _save_cache(self, cache: Dict, cache_file: str):
        """Save cache to file."""
        try:
            with open(cache_file, 'wb') as f:
                pickle.dump(cache, f)
                logger.info(f"Saved cache to {cache_file}")
        except Exception as e:
            logger.error(f"Could not save cache to {cache_file}: {str(e)}")

    def get_cluster_numbers(self, sigma: Pattern) -> Dict[Tuple[int, int], int]:
        """Known r_{n,k} values for a pattern, empty when none are cached."""
        entry = self.clusters_cache.get(str(sigma))
        if isinstance(entry, dict) and 'values' in entry:
            return dict(entry['values'])
        return {}

    def store_cluster_numbers(self, sigma: Pattern, values: Dict[Tuple[int, int], int]) -> bool:
        try:
            with self._lock:
                merged = self.get_cluster_numbers(sigma)
                merged.update(values)
                self.clusters_cache[str(sigma)] = {
                    'values': merged,
                    'timestamp': datetime.now().isoformat(),
                }
                self._save_cache(self.clusters_cache, self.clusters_cache_file)
            return True
        except Exception as e:
            logger.error(f"Error caching cluster numbers for {sigma}: {str(e)}")
            return False

    def get_alpha_vector(self, sigma: Pattern, N: int) -> Optional[Tuple[int, ...]]:
        """Cached alpha_0..alpha_N, if a vector at least that long is stored."""
        entry = self.alphas_cache.get(str(sigma))
        if isinstance(entry, dict) and len(entry.get('alphas', ())) > N:
            logger.debug(f"Retrieved cached avoider counts for {sigma}")
            return tuple(entry['alphas'][:N + 1])
        return None

    def store_alpha_vector(self, sigma: Pattern, alphas) -> bool:
        try:
            with self._lock:
                existing = self.alphas_cache.get(str(sigma), {}).get('alphas', ())
                if len(existing) >= len(alphas):
                    return True
                self.alphas_cache[str(sigma)] = {
                    'alphas': tuple(alphas),
                    'timestamp': datetime.now().isoformat(),
                }
                self._save_cache(self.alphas_cache, self.alphas_cache_file)
            return True
        except Exception as e:
            logger.error(f"Error caching avoider counts for {sigma}: {str(e)}")
            return False

    def get_cache_stats(self) -> Dict:
        return {
            'cluster_patterns': len(self.clusters_cache),
            'alpha_patterns': len(self.alphas_cache),
            'cache_dir': self.cache_dir,
        }

    def clear_cache(self):
        """Drop every cached entry and remove the cache files."""
        with self._lock:
            self.clusters_cache = {}
            self.alphas_cache = {}
            for cache_file in (self.clusters_cache_file, self.alphas_cache_file):
                try:
                    if os.path.exists(cache_file):
                        os.remove(cache_file)
                        logger.info(f"Removed cache file {cache_file}")
                except Exception as e:
                    logger.error(f"Could not remove {cache_file}: {str(e)}")
