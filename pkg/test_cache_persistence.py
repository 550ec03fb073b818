#!/usr/bin/env python3
"""
Test script for the on-disk caches, report rendering and configuration
"""

import argparse
import json
import os
import sys
from fractions import Fraction

import pytest
import sympy as sp

sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from components.cache_manager import CacheManager
from components.errors import InvalidInputError
from components.growth_analyzer import BracketStatus
from components.perm_core import Pattern
from components.reference_values import reference_values
from components.report_persistence import (
    DEFAULT_FIXTURES_FILE, ReportWriter, load_reference_values, save_reference_values,
)
from components.run_config import RunConfig, parse_tolerance, setup_logging
from components.worker_pool import parallel_map, resolve_thread_count


def _square(x):
    return x * x


def test_cache_round_trip(tmp_path):
    print("Testing cache manager...")
    cache = CacheManager(str(tmp_path))
    sigma = Pattern.parse("1342")
    assert cache.store_cluster_numbers(sigma, {(7, 2): 10})
    assert cache.store_cluster_numbers(sigma, {(10, 3): 280})
    assert cache.store_alpha_vector(sigma, (1, 1, 2, 6, 23))

    reloaded = CacheManager(str(tmp_path))
    assert reloaded.get_cluster_numbers(sigma) == {(7, 2): 10, (10, 3): 280}
    assert reloaded.get_alpha_vector(sigma, 3) == (1, 1, 2, 6)
    assert reloaded.get_alpha_vector(sigma, 9) is None
    print("✅ Cache entries survive a reload")


def test_shorter_alpha_vector_does_not_replace_longer(tmp_path):
    cache = CacheManager(str(tmp_path))
    sigma = Pattern.parse("123")
    cache.store_alpha_vector(sigma, (1, 1, 2, 5, 17))
    cache.store_alpha_vector(sigma, (1, 1, 2))
    assert cache.get_alpha_vector(sigma, 4) == (1, 1, 2, 5, 17)


def test_clear_cache(tmp_path):
    cache = CacheManager(str(tmp_path))
    cache.store_alpha_vector(Pattern.parse("132"), (1, 1, 2, 4))
    cache.clear_cache()
    assert cache.get_cache_stats()['alpha_patterns'] == 0
    assert not os.path.exists(cache.alphas_cache_file)


def test_corrupt_cache_file_is_ignored(tmp_path):
    (tmp_path / "cluster_numbers.pkl").write_bytes(b"not a pickle")
    cache = CacheManager(str(tmp_path))
    assert cache.get_cluster_numbers(Pattern.parse("132")) == {}


def test_json_rendering():
    writer = ReportWriter("json")
    data = json.loads(writer.to_json({
        'small': 42,
        'big': 2**80,
        'ratio': Fraction(1, 3),
        'rational': sp.Rational(5, 7),
        'status': BracketStatus.CERTIFIED,
        'flag': True,
        'nested': [(1, 2**60)],
    }))
    assert data == {'small': 42, 'big': str(2**80), 'ratio': "1/3", 'rational': "5/7",
                    'status': "certified", 'flag': True, 'nested': [[1, str(2**60)]]}


def test_csv_rendering():
    writer = ReportWriter("csv")
    text = writer.render({'ignored': True}, [("132", 5, 2, 3), ("132", 30, 2, 2**70)],
                         ['pattern', 'n', 'k', 'r'])
    assert text.splitlines() == ["pattern,n,k,r", "132,5,2,3", f"132,30,2,{2**70}"]


def test_reference_values_file(tmp_path):
    path = str(tmp_path / "out" / "values.json")
    assert save_reference_values({'answer': 2**64}, path)
    assert load_reference_values(path) == {'answer': str(2**64)}


def test_corrupt_reference_file_is_backed_up(tmp_path):
    path = tmp_path / "values.json"
    path.write_text("{broken", encoding='utf-8')
    assert load_reference_values(str(path)) == {}
    assert (tmp_path / "values.json.backup").exists()
    assert load_reference_values(str(tmp_path / "missing.json")) == {}


def test_committed_fixtures_are_current():
    """saved_data/reference_values.json matches what --seed-tables writes."""
    here = os.path.dirname(os.path.abspath(__file__))
    committed = load_reference_values(os.path.join(here, DEFAULT_FIXTURES_FILE))
    fresh = json.loads(ReportWriter().to_json(reference_values()))
    assert committed == fresh


def test_tolerance_parsing():
    assert parse_tolerance("1e-6") == Fraction(1, 10**6)
    assert parse_tolerance("1/1000") == Fraction(1, 1000)
    for bad in ("abc", "0", "-1e-3"):
        with pytest.raises(InvalidInputError):
            parse_tolerance(bad)


def test_run_config_defaults_and_validation():
    config = RunConfig()
    assert config.to_dict() == {'max_n': 12, 'cluster_depth': 6, 'tolerance': "1e-6",
                                'threads': 1, 'format': "json", 'brute_guard': 10}
    with pytest.raises(InvalidInputError):
        RunConfig(format="xml")
    with pytest.raises(InvalidInputError):
        RunConfig(threads=0)


def test_run_config_keeps_explicit_zeros():
    args = argparse.Namespace(max_n=0, brute_guard=0, threads=None, format=None, k=None, tol=None)
    config = RunConfig.from_args(args)
    assert config.max_n == 0
    assert config.brute_guard == 0
    assert config.cluster_depth == RunConfig.cluster_depth
    with pytest.raises(InvalidInputError):
        RunConfig.from_args(argparse.Namespace(threads=0))


def test_threads_from_environment(monkeypatch):
    monkeypatch.setenv("CPK_THREADS", "3")
    assert resolve_thread_count(None) == 3
    monkeypatch.setenv("CPK_THREADS", "zero")
    assert resolve_thread_count(None) == 1
    assert resolve_thread_count(0) == 1


def test_parallel_map_preserves_order():
    items = list(range(20))
    assert parallel_map(_square, items, 2) == [x * x for x in items]
    assert parallel_map(_square, items, 1) == [x * x for x in items]


def test_setup_logging_writes_file(tmp_path):
    log_file = tmp_path / "cpk.log"
    setup_logging("INFO", str(log_file))
    CacheManager(str(tmp_path / "cache"))
    assert "Cache Manager initialized" in log_file.read_text(encoding='utf-8')
    setup_logging("WARNING")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
