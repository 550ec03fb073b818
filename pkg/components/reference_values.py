#!/usr/bin/env python3
"""
Reference Values
Published values the verification suites and tests compare against.
"""

from math import comb
from typing import Dict

# r_{n,k} for the length-4 patterns whose minimal overlap is 2.
PUBLISHED_CLUSTER_TABLE = {
    "2413": {(6, 2): 2, (7, 2): 9, (8, 3): 5, (9, 3): 108, (10, 3): 234},
    "2143": {(6, 2): 1, (7, 2): 9, (8, 3): 1, (9, 3): 30, (10, 3): 234},
    "1324": {(6, 2): 2, (7, 2): 1, (8, 3): 5, (9, 3): 4, (10, 3): 1},
    "1423": {(6, 2): 1, (7, 2): 4, (8, 3): 1, (9, 3): 16, (10, 3): 28},
}

CLASS_COUNTS = {3: 2, 4: 7, 5: 25, 6: 92}

CLASS_REPRESENTATIVES = {
    3: ["123", "132"],
    4: ["1234", "2413", "2143", "1324", "1423", "1342", "1243"],
}

OVERLAP_SETS = {
    "14253": [2, 4],
    "132": [2],
    "1234": [1, 2, 3],
    "1324": [2, 3],
}

NONOVERLAPPING = ["132", "1243", "1342", "21534", "34671285"]

CLUSTER_NUMBERS = {
    ("132", 5, 2): 3,
    ("2413", 9, 3): 108,
    ("1324", 10, 3): 1,
    ("1423", 7, 2): 4,
}

CONSTANTS = {'C': "1.276", 'c': "1.051", 'nonoverlapping_ratio_floor': "0.364"}

ANOMALY_PAIR = {'sigma': "23567184", 'tau': "34671285"}


def closed_form_d(m: int) -> Dict[str, int]:
    """2- and 3-cluster counts of 12..(m-2)m(m-1) and 134..m2."""
    d2_upsilon = comb(2 * m - 3, m - 2)
    return {'d2_tau': m, 'd2_upsilon': d2_upsilon,
            'd3_upsilon': d2_upsilon * comb(3 * m - 4, m - 2)}


def extremes_of_d2(m: int) -> Dict[str, int]:
    return {'largest': comb(2 * m - 3, m - 2), 'second_largest': 3 * comb(2 * m - 5, m - 3),
            'second_smallest': comb(m + 1, 2), 'smallest': m}


def reference_values() -> Dict:
    """Every published value as plain JSON-ready data."""
    return {
        'table1': {pattern: [{'n': n, 'k': k, 'r': r} for (n, k), r in sorted(values.items())]
                   for pattern, values in PUBLISHED_CLUSTER_TABLE.items()},
        'class_counts': {str(m): count for m, count in CLASS_COUNTS.items()},
        'class_representatives': {str(m): reps for m, reps in CLASS_REPRESENTATIVES.items()},
        'overlap_sets': OVERLAP_SETS,
        'nonoverlapping': NONOVERLAPPING,
        'cluster_numbers': [{'pattern': p, 'n': n, 'k': k, 'r': r}
                            for (p, n, k), r in CLUSTER_NUMBERS.items()],
        'constants': CONSTANTS,
        'anomaly_pair': ANOMALY_PAIR,
        'closed_form_d': {str(m): closed_form_d(m) for m in (4, 5, 6)},
        'd2_extremes': {str(m): extremes_of_d2(m) for m in (5, 6)},
    }
