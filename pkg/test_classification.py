#!/usr/bin/env python3
"""
Test script for c-Wilf classification by exact avoider counts
"""

import os
import sys

import pytest

sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from components.cache_manager import CacheManager
from components.egf import avoider_counts
from components.equivalence_classifier import EquivalenceClassifier, class_representative
from components.errors import InvalidInputError
from components.perm_core import Pattern, all_patterns, symmetry_orbit
from components.reference_values import CLASS_REPRESENTATIVES


def test_length_three():
    print("Testing classification of S_3...")
    report = EquivalenceClassifier().classify(3)
    assert len(report.classes) == 2
    assert [str(s) for s in report.representatives] == CLASS_REPRESENTATIVES[3]
    assert report.status == "ok"
    assert report.expected_count == 2
    print("✅ Two classes for length 3")


def test_length_four():
    print("Testing classification of S_4...")
    report = EquivalenceClassifier().classify(4)
    assert len(report.classes) == 7
    assert sorted(str(s) for s in report.representatives) == sorted(CLASS_REPRESENTATIVES[4])
    assert sorted(len(cls.members) for cls in report.classes) == [2, 2, 2, 2, 4, 4, 8]
    assert report.stabilized_at <= report.N
    assert str(report.class_of(Pattern.parse("1432")).representative) == "1342"
    print("✅ Seven classes for length 4")


def test_classes_partition_and_respect_symmetry():
    report = EquivalenceClassifier().classify(4)
    members = [sigma for cls in report.classes for sigma in cls.members]
    assert sorted(members) == all_patterns(4)
    for sigma in all_patterns(4):
        cls = report.class_of(sigma)
        assert all(tau in cls.members for tau in symmetry_orbit(sigma))


def test_short_prefix_warns():
    """Too few terms cannot separate the classes."""
    report = EquivalenceClassifier().classify(4, N=4)
    assert len(report.classes) == 1
    assert report.status == "warning"


def test_refinement_is_monotone():
    classifier = EquivalenceClassifier()
    coarse = classifier.classify(4, N=6)
    fine = classifier.classify(4, N=7)
    for cls in fine.classes:
        coarse_class = coarse.class_of(cls.members[0])
        assert all(sigma in coarse_class.members for sigma in cls.members)
    assert len(fine.classes) >= len(coarse.classes)


def test_representative_rule():
    members = [Pattern.parse(t) for t in ("4312", "3421", "2134", "1243")]
    assert str(class_representative(members)) == "1243"


def test_report_serialization():
    report = EquivalenceClassifier().classify(3)
    data = report.to_dict()
    assert data['count'] == 2
    assert data['classes'][1]['members'] == ["132", "213", "231", "312"]
    assert (3, "123", "321") in report.rows()


def test_alpha_vectors_use_cache(tmp_path):
    cache = CacheManager(str(tmp_path))
    first = EquivalenceClassifier(cache=cache).classify(3, N=9)
    assert cache.get_alpha_vector(Pattern.parse("123"), 9) is not None

    reloaded = CacheManager(str(tmp_path))
    second = EquivalenceClassifier(cache=reloaded).classify(3, N=9)
    assert second.to_dict() == first.to_dict()
    assert reloaded.get_cache_stats()['alpha_patterns'] == 2


def test_threads_give_same_report():
    sequential = EquivalenceClassifier(threads=1).classify(4, N=10)
    pooled = EquivalenceClassifier(threads=2).classify(4, N=10)
    assert pooled.to_dict() == sequential.to_dict()


def test_invalid_length():
    with pytest.raises(InvalidInputError):
        EquivalenceClassifier().classify(1)


@pytest.mark.slow
def test_length_five():
    report = EquivalenceClassifier().classify(5)
    assert len(report.classes) == 25
    assert report.status == "ok"


@pytest.mark.slow
def test_length_six_default_order_separates_all_classes():
    report = EquivalenceClassifier().classify(6)
    assert report.N == 15
    assert len(report.classes) == 92
    assert report.status == "ok"


def test_avoider_counts_agree_across_each_orbit():
    """Computed per pattern, not per orbit."""
    for sigma in all_patterns(4):
        alphas = avoider_counts(sigma, 10)
        for tau in symmetry_orbit(sigma):
            assert avoider_counts(tau, 10) == alphas


if __name__ == "__main__":
    test_length_three()
    test_length_four()
    test_classes_partition_and_respect_symmetry()
    test_short_prefix_warns()
    test_refinement_is_monotone()
    test_representative_rule()
    test_report_serialization()
    test_threads_give_same_report()
    test_invalid_length()
    test_avoider_counts_agree_across_each_orbit()
    print("\n🎉 All classification tests passed!")
