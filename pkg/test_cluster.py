#!/usr/bin/env python3
"""
Test script for overlap sets, cluster posets and cluster numbers
"""

import os
import sys

import pytest

sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from components.cache_manager import CacheManager
from components.cluster import (
    _cluster_fillings, cluster_number, cluster_numbers_bruteforce, cluster_poset,
    cluster_table, d_k, enumerate_clusters_bruteforce, f, index_tuples, is_nonoverlapping,
    min_overlap, overlap_set, tau_pattern, upsilon_pattern, verify_closed_form_d, verify_f_orderings,
)
from components.errors import DomainError, InvalidInputError, ResourceLimitError
from components.linext import count_linear_extensions, is_linear_extension
from components.perm_core import Pattern, all_patterns, complement, reverse
from components.reference_values import (
    CLUSTER_NUMBERS, NONOVERLAPPING, OVERLAP_SETS, PUBLISHED_CLUSTER_TABLE,
)


def test_overlap_sets():
    print("Testing overlap sets...")
    for text, expected in OVERLAP_SETS.items():
        assert list(overlap_set(Pattern.parse(text))) == expected
    assert min_overlap(Pattern.parse("1324")) == 2
    print("✅ Overlap sets match")


def test_nonoverlapping_examples():
    for text in NONOVERLAPPING:
        assert is_nonoverlapping(Pattern.parse(text))
    assert not is_nonoverlapping(Pattern.parse("1234"))
    assert not is_nonoverlapping(Pattern.parse("2143"))
    assert not is_nonoverlapping(Pattern.parse("12"))


def test_index_tuples():
    sigma = Pattern.parse("132")
    assert [t.indices for t in index_tuples(sigma, 5, 2)] == [(1, 3)]
    assert index_tuples(sigma, 4, 2) == []
    assert [t.indices for t in index_tuples(Pattern.parse("1234"), 6, 2)] == [(1, 3)]
    assert [t.indices for t in index_tuples(Pattern.parse("123"), 6, 3)] == [(1, 2, 4), (1, 3, 4)]
    with pytest.raises(InvalidInputError):
        index_tuples(sigma, 5, 0)


def test_cluster_poset_for_132():
    """Windows at 1 and 3 give p0 < p2 < p1 and p2 < p4 < p3."""
    sigma = Pattern.parse("132")
    t = index_tuples(sigma, 5, 2)[0]
    poset = cluster_poset(sigma, t)
    assert poset.size == 5
    assert poset.less_than(0, 2) and poset.less_than(2, 1)
    assert poset.less_than(2, 4) and poset.less_than(4, 3)
    assert count_linear_extensions(poset) == 3


def test_three_cluster_of_14253():
    """The 3-cluster of 14253 at windows 1, 3 and 7."""
    sigma = Pattern.parse("14253")
    assert sorted(t.indices for t in index_tuples(sigma, 11, 3)) == [(1, 3, 7), (1, 5, 7)]
    assert [t.indices for t in index_tuples(Pattern.parse("1324"), 9, 3)] == [(1, 3, 6), (1, 4, 6)]

    t = next(t for t in index_tuples(sigma, 11, 3) if t.indices == (1, 3, 7))
    poset = cluster_poset(sigma, t)
    assert poset.size == 11
    for x, y in [(0, 2), (2, 4), (4, 1), (1, 3)]:
        assert poset.less_than(x, y)
    assert is_linear_extension(poset, (1, 6, 2, 8, 3, 11, 4, 9, 5, 10, 7))
    assert not is_linear_extension(poset, tuple(range(1, 12)))


@pytest.mark.slow
def test_three_cluster_poset_counts_fillings():
    sigma = Pattern.parse("14253")
    t = next(t for t in index_tuples(sigma, 11, 3) if t.indices == (1, 3, 7))
    fillings = sum(1 for _ in _cluster_fillings(sigma, 11, t.indices))
    assert count_linear_extensions(cluster_poset(sigma, t)) == fillings


def test_cluster_tables_invariant_under_symmetry():
    for text in ("1342", "2413", "1324", "2143", "13254"):
        sigma = Pattern.parse(text)
        values = cluster_table(sigma, 10, 3).values
        for tau in (reverse(sigma), complement(sigma)):
            assert cluster_table(tau, 10, 3).values == values, (text, str(tau))


def test_clusters_of_132():
    print("Testing the 132 clusters of length 5...")
    clusters = enumerate_clusters_bruteforce(Pattern.parse("132"), 5, 2)
    assert [str(pi) for pi, _ in clusters] == ["13254", "14253", "15243"]
    assert cluster_number(Pattern.parse("132"), 5, 2) == 3
    print("✅ Three clusters found")


def test_reference_cluster_numbers():
    for (text, n, k), expected in CLUSTER_NUMBERS.items():
        assert cluster_number(Pattern.parse(text), n, k) == expected


def test_table_values_two_ways():
    print("Testing published cluster numbers by two methods...")
    for text, values in PUBLISHED_CLUSTER_TABLE.items():
        sigma = Pattern.parse(text)
        for (n, k), expected in values.items():
            assert cluster_number(sigma, n, k) == expected
            assert cluster_numbers_bruteforce(sigma, n, k) == expected
    print("✅ All 20 values match")


def test_linext_matches_bruteforce_small():
    """Every pattern of length 3 and 4, every k-cluster of length up to 8."""
    for m in (3, 4):
        for sigma in all_patterns(m):
            for n in range(m, 9):
                for k in range(1, n - m + 2):
                    assert cluster_number(sigma, n, k) == cluster_numbers_bruteforce(sigma, n, k)


def test_dedupe_and_threads_agree():
    sigma = Pattern.parse("2413")
    plain = cluster_number(sigma, 10, 3)
    assert cluster_number(sigma, 10, 3, dedupe=True) == plain
    assert cluster_number(sigma, 10, 3, threads=2) == plain


def test_bruteforce_guard():
    with pytest.raises(ResourceLimitError):
        cluster_numbers_bruteforce(Pattern.parse("132"), 11, 5)


def test_cluster_table():
    table = cluster_table(Pattern.parse("132"), 5, 2)
    assert table.rows() == [("132", 3, 1, 1), ("132", 5, 2, 3)]
    assert table.get(4, 2) == 0
    frame = table.to_frame()
    assert list(frame.columns) == ["pattern", "n", "k", "r"]
    assert table.to_dict()['rows'][1] == {'n': 5, 'k': 2, 'r': 3}


def test_cluster_table_uses_cache(tmp_path):
    cache = CacheManager(str(tmp_path))
    sigma = Pattern.parse("2143")
    first = cluster_table(sigma, 10, 3, cache=cache)
    assert cache.get_cluster_numbers(sigma)[(9, 3)] == 30

    reloaded = CacheManager(str(tmp_path))
    assert cluster_table(sigma, 10, 3, cache=reloaded).values == first.values


def test_d_k_and_f():
    print("Testing non-overlapping cluster counts...")
    sigma = Pattern.parse("1342")
    assert d_k(sigma, 1) == 1
    assert d_k(sigma, 2) == f(1, 2, 4) == 10
    with pytest.raises(DomainError):
        d_k(Pattern.parse("123"), 2)
    for m in range(4, 9):
        assert f(1, m - 1, m) == m
        assert f(2, m - 1, m) == (m - 1) ** 2
    print("✅ d_k and f agree")


def test_closed_forms():
    assert str(tau_pattern(5)) == "12354"
    assert str(upsilon_pattern(5)) == "13452"
    for m in (4, 5, 6):
        report = verify_closed_form_d(m)
        assert report['status'] == 'pass', report


def test_f_orderings():
    for m in range(3, 10):
        assert verify_f_orderings(m)['status'] == 'pass'


if __name__ == "__main__":
    test_overlap_sets()
    test_nonoverlapping_examples()
    test_index_tuples()
    test_cluster_poset_for_132()
    test_three_cluster_of_14253()
    test_cluster_tables_invariant_under_symmetry()
    test_clusters_of_132()
    test_reference_cluster_numbers()
    test_table_values_two_ways()
    test_linext_matches_bruteforce_small()
    test_dedupe_and_threads_agree()
    test_bruteforce_guard()
    test_cluster_table()
    test_d_k_and_f()
    test_closed_forms()
    test_f_orderings()
    print("\n🎉 All cluster tests passed!")
