#!/usr/bin/env python3
"""
Test script for the non-overlapping pattern census
"""

import os
import sys
from math import comb

import pytest

sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from components.cluster import is_nonoverlapping
from components.errors import InvalidInputError
from components.nonoverlap_census import (
    NonOverlapCensus, delta_pairs, delta_size_formula, witness_pattern,
)
from components.reference_values import extremes_of_d2


def test_delta_pairs():
    assert delta_pairs(5) == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]
    assert [delta_size_formula(m) for m in (5, 6, 7, 8)] == [5, 8, 11, 15]


def test_witness_construction():
    print("Testing witness patterns...")
    assert str(witness_pattern(2, 4, 5)) == "23154"
    assert str(witness_pattern(1, 2, 4)) == "1342"
    for m in range(5, 9):
        for a, b in delta_pairs(m):
            sigma = witness_pattern(a, b, m)
            assert is_nonoverlapping(sigma), str(sigma)
            assert (sigma.entries[0], sigma.entries[-1]) == (a, b)
    print("✅ Every witness is non-overlapping with the right endpoints")


def test_length_four_pair_without_witness():
    """No non-overlapping pattern of length 4 starts with 2 and ends with 3."""
    report = NonOverlapCensus().census(4)
    assert report.status == 'pass', report.checks
    missing = [pair for pair in report.delta_pairs if pair.witness is None]
    assert [(pair.a, pair.b) for pair in missing] == [(2, 3)]
    ends = {(s.entries[0], s.entries[-1]) for s in NonOverlapCensus().nonoverlapping_patterns(4)}
    assert (2, 3) not in ends
    assert report.to_dict()['delta_pairs'][2]['witness'] is None
    assert report.rows()[2] == (4, 2, 3, str(report.delta_pairs[2].d2), "")


def test_census_length_five():
    print("Testing the census for m = 5...")
    report = NonOverlapCensus().census(5)
    assert report.status == 'pass', report.checks
    assert len(report.delta_pairs) == 5
    assert report.extremes['largest'] == {'value': str(comb(7, 3)), 'a': 1, 'b': 2}
    assert report.extremes['smallest'] == {'value': '5', 'a': 1, 'b': 4}
    assert report.checks['d2_equals_f']
    assert report.observed_classes_lower_bound == 5
    print("✅ Census checks pass")


def test_census_length_six():
    report = NonOverlapCensus().census(6)
    assert report.status == 'pass', report.checks
    assert len(report.delta_pairs) == 8
    expected = extremes_of_d2(6)
    assert {label: int(entry['value']) for label, entry in report.extremes.items()} == expected
    assert all(pair.d2 == pair.d2_linext for pair in report.delta_pairs)


@pytest.mark.parametrize("m", [3, 4, 7, 8])
def test_ratio_and_delta_size(m):
    report = NonOverlapCensus(linext_check_max_m=0, d3_max_m=0).census(m)
    assert report.checks['ratio_at_least_0.364']
    assert report.checks['witnesses_nonoverlapping']
    if m >= 5:
        assert report.checks['delta_size_formula']
        assert report.checks['extremes_located']


def test_census_serialization():
    report = NonOverlapCensus().census(5)
    data = report.to_dict()
    assert data['count'] == report.count
    assert data['delta_size'] == 5
    assert data['delta_pairs'][3]['witness'] == str(witness_pattern(2, 3, 5))
    assert report.rows()[0] == (5, 1, 2, "35", "13452")


def test_census_rejects_short_length():
    with pytest.raises(InvalidInputError):
        NonOverlapCensus().census(2)


def test_endpoint_invariance():
    report = NonOverlapCensus().endpoint_invariance(5, max_k=3)
    assert report['status'] == 'pass'


@pytest.mark.slow
@pytest.mark.parametrize("m", [4, 5, 6])
def test_endpoint_invariance_through_four_clusters(m):
    report = NonOverlapCensus().endpoint_invariance(m, max_k=4)
    assert report['status'] == 'pass', report['violations']


def test_strong_equivalence():
    report = NonOverlapCensus().check_strong_equivalence(4, 8)
    assert report['patterns'] == 12
    assert report['status'] == 'pass', report['violations']


def test_anomaly_pair():
    print("Testing the d_2/d_3 anomaly pair...")
    report = NonOverlapCensus().verify_d_anomaly_pair()
    assert report['nonoverlapping']
    assert report['d2_sigma'] == report['d2_tau']
    assert report['d3_sigma'] != report['d3_tau']
    assert report['status'] == 'pass'
    print("✅ Equal d_2, different d_3")


if __name__ == "__main__":
    test_delta_pairs()
    test_witness_construction()
    test_length_four_pair_without_witness()
    test_census_length_five()
    test_census_length_six()
    for length in (3, 4, 7, 8):
        test_ratio_and_delta_size(length)
    test_census_serialization()
    test_census_rejects_short_length()
    test_endpoint_invariance()
    test_strong_equivalence()
    test_anomaly_pair()
    print("\n🎉 All census tests passed!")
