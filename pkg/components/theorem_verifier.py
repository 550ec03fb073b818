#!/usr/bin/env python3
"""
Theorem Verifier Component
Verification suites: published cluster numbers, growth-rate orderings,
inequalities between omega bounds on a rational grid, property checks and
derivative signs.

Every suite returns a dict with a 'status' of 'pass' or 'fail' plus the
evidence behind it.
"""

import logging
from math import comb
from typing import Dict, List, Optional, Tuple

import sympy as sp

from components.cluster import (
    cluster_number, cluster_numbers_bruteforce, is_nonoverlapping, overlap_set,
    tau_pattern, upsilon_pattern, verify_closed_form_d, verify_f_orderings,
)
from components.egf import s_k_polynomial
from components.equivalence_classifier import EquivalenceClassifier
from components.growth_analyzer import (
    GrowthAnalyzer, GrowthBracket, decimal_string, monotone_terms, partial_sum,
)
from components.nonoverlap_census import NonOverlapCensus
from components.perm_core import Pattern, all_patterns, symmetry_orbit
from components.reference_values import PUBLISHED_CLUSTER_TABLE

logger = logging.getLogger(__name__)

GRID_POINTS = 64
GRID_EDGE = sp.Rational(1, 2**20)
ORDERING_TOLERANCE = sp.Rational(1, 10**9)
RATIO_CEILING = sp.Rational(97, 100)


def rational_grid(upper) -> List[sp.Rational]:
    """64 equally spaced interior points of (0, upper) plus both ends approached within 2^-20."""
    upper = sp.Rational(upper)
    points = [upper * i / (GRID_POINTS + 1) for i in range(1, GRID_POINTS + 1)]
    return [GRID_EDGE] + points + [upper - GRID_EDGE]


def _orbit_heads(m: int) -> List[Pattern]:
    return sorted({symmetry_orbit(sigma)[0] for sigma in all_patterns(m)})


class TheoremVerifier:
    """Runs the verification suites against shared analyzer and classifier state."""

    def __init__(self, analyzer: Optional[GrowthAnalyzer] = None,
                 classifier: Optional[EquivalenceClassifier] = None,
                 census: Optional[NonOverlapCensus] = None, max_depth: int = 6):
        self.analyzer = analyzer or GrowthAnalyzer()
        self.classifier = classifier or EquivalenceClassifier()
        self.census = census or NonOverlapCensus()
        self.max_depth = max_depth
        self._reports = {}
        logger.info("Theorem Verifier initialized")

    def _classes(self, m: int):
        if m not in self._reports:
            self._reports[m] = self.classifier.classify(m)
        return self._reports[m]

    # Published cluster numbers

    def verify_table1(self) -> Dict:
        """Cluster numbers of 2413, 2143, 1324, 1423 by linear extensions and by direct search."""
        rows = []
        for pattern_text, values in PUBLISHED_CLUSTER_TABLE.items():
            sigma = Pattern.parse(pattern_text)
            for (n, k), expected in values.items():
                via_linext = cluster_number(sigma, n, k)
                via_search = cluster_numbers_bruteforce(sigma, n, k)
                rows.append({'pattern': pattern_text, 'n': n, 'k': k, 'expected': expected,
                             'linext': via_linext, 'bruteforce': via_search,
                             'match': via_linext == via_search == expected})
        matched = sum(1 for row in rows if row['match'])
        logger.info(f"Table check: {matched}/{len(rows)} matched")
        return {'suite': 'table1', 'matched': matched, 'total': len(rows), 'rows': rows,
                'status': 'pass' if matched == len(rows) else 'fail'}

    # Growth-rate orderings

    def _separated(self, low: Pattern, high: Pattern, start: int) -> Tuple[bool, int, GrowthBracket, GrowthBracket]:
        """Raise the cluster depth until low's bracket lies strictly below high's, or give up."""
        K = start
        while True:
            first = self.analyzer.bracket_growth_rate(low, K, ORDERING_TOLERANCE)
            second = self.analyzer.bracket_growth_rate(high, K, ORDERING_TOLERANCE)
            if first.below(second) or K >= self.max_depth:
                return first.below(second), K, first, second
            K += 1

    def _ordering(self, name: str, low: Pattern, others: List[Pattern], start: int,
                  low_is_below: bool = True) -> Dict:
        pairs = []
        for sigma in others:
            if low_is_below:
                ok, K, first, second = self._separated(low, sigma, start)
            else:
                ok, K, first, second = self._separated(sigma, low, start)
            pairs.append({'low': str(first.pattern), 'high': str(second.pattern), 'K': K,
                          'low_hi': decimal_string(first.hi) if first.hi is not None else None,
                          'high_lo': decimal_string(second.lo) if second.lo is not None else None,
                          'separated': ok})
        return {'claim': name, 'pairs': pairs,
                'status': 'pass' if all(pair['separated'] for pair in pairs) else 'fail'}

    def verify_theorem_orderings(self, m: int, start_depth: int = 3) -> Dict:
        """Monotone lowest, 12..(m-2)m(m-1) highest, 134..m2 lowest among non-overlapping."""
        reps = self._classes(m).representatives
        monotone = Pattern.of(range(1, m + 1))
        tau, upsilon = tau_pattern(m), upsilon_pattern(m)
        report = self._classes(m)
        tau_rep = report.class_of(tau).representative
        upsilon_rep = report.class_of(upsilon).representative

        checks = [
            self._ordering('monotone_smallest', monotone,
                           [sigma for sigma in reps if sigma != monotone], start_depth),
            self._ordering('tau_largest', tau_rep,
                           [sigma for sigma in reps if sigma != tau_rep], start_depth, low_is_below=False),
            self._ordering('upsilon_smallest_nonoverlapping', upsilon_rep,
                           [sigma for sigma in reps if is_nonoverlapping(sigma) and sigma != upsilon_rep],
                           start_depth),
        ]
        passed = all(check['status'] == 'pass' for check in checks)
        return {'suite': 'theorems', 'm': m, 'checks': checks, 'status': 'pass' if passed else 'fail'}

    # Inequalities on a rational grid

    def _grid_violations(self, grid, lesser: sp.Poly, greater: sp.Poly) -> List[str]:
        return [str(z) for z in grid if not lesser.eval(z) < greater.eval(z)]

    def _terms(self, sigma: Pattern, count: int) -> List[sp.Poly]:
        ceiling = sigma.m + count * (sigma.m - 1)
        return [s_k_polynomial(sigma, k, ceiling).poly for k in range(1, count + 1)]

    def verify_monotone_upper_bound(self, m: int, grid) -> Dict:
        """1-z+a1-a2+a3-a4+a5 < 1-z+z^m/m!-z^{m+1}/(m+1)!+z^{2m}/(2m)!, and both tend to 1 at 0."""
        terms = monotone_terms(m, 5)
        bound, tighter = partial_sum(terms, 3), partial_sum(terms, 5)
        violations = self._grid_violations(grid, tighter, bound)
        at_zero = bound.eval(0) == 1 and tighter.eval(0) == 1
        return {'claim': 'monotone_upper_bound', 'violations': violations,
                'status': 'pass' if not violations and at_zero else 'fail'}

    def verify_sandwich(self, sigma: Pattern, grid) -> Dict:
        """1-z+s1-s2 < 1-z+s1-s2+s3-s4 < 1-z+...+s5 < 1-z+s1-s2+s3 < 1-z+s1."""
        terms = self._terms(sigma, 5)
        chain = [partial_sum(terms, j) for j in (2, 4, 5, 3, 1)]
        violations = []
        for lesser, greater in zip(chain, chain[1:]):
            violations.extend(self._grid_violations(grid, lesser, greater))
        return {'pattern': str(sigma), 'violations': sorted(set(violations))}

    def verify_nonoverlapping_chain(self, m: int, reps: List[Pattern], grid) -> Dict:
        """upper(upsilon) < lower(sigma) and upper(sigma) < lower(tau) for the other non-overlapping classes."""
        tau, upsilon = tau_pattern(m), upsilon_pattern(m)
        lower = {}
        upper = {}
        for sigma in [tau, upsilon] + reps:
            terms = self._terms(sigma, 3)
            lower[sigma], upper[sigma] = partial_sum(terms, 2), partial_sum(terms, 3)

        classes = self._classes(m)
        tau_cls, ups_cls = classes.class_of(tau), classes.class_of(upsilon)
        middle = [sigma for sigma in reps if is_nonoverlapping(sigma)
                  and sigma not in tau_cls.members and sigma not in ups_cls.members]

        pairs = []
        if not middle:
            pairs.append({'between': [str(upsilon), str(tau)],
                          'violations': self._grid_violations(grid, upper[upsilon], lower[tau])})
        for sigma in middle:
            pairs.append({'between': [str(upsilon), str(sigma)],
                          'violations': self._grid_violations(grid, upper[upsilon], lower[sigma])})
            pairs.append({'between': [str(sigma), str(tau)],
                          'violations': self._grid_violations(grid, upper[sigma], lower[tau])})
        ok = all(not pair['violations'] for pair in pairs)
        return {'claim': 'nonoverlapping_chain', 'pairs': pairs, 'status': 'pass' if ok else 'fail'}

    def verify_monotone_below(self, m: int, reps: List[Pattern], grid) -> Dict:
        """Monotone upper bound stays under every other class's lower bound."""
        monotone_upper = partial_sum(monotone_terms(m, 3), 3)
        failures = []
        for sigma in reps:
            if sigma.is_monotone():
                continue
            lower = partial_sum(self._terms(sigma, 2), 2)
            bad = self._grid_violations(grid, monotone_upper, lower)
            if bad:
                failures.append({'pattern': str(sigma), 'violations': bad})
        return {'claim': 'monotone_below', 'failures': failures,
                'status': 'fail' if failures else 'pass'}

    def verify_decreasing_terms(self, m: int, max_k: int = 6) -> Dict:
        """s_{k+1} < s_k and s_{k+1}/s_k < 0.97 at the C upper bound, for every pattern of length m."""
        z_star = self.analyzer.c_upper_bound()
        failures = []
        for head in _orbit_heads(m):
            values = [poly.eval(z_star) for poly in self._terms(head, max_k + 1)]
            for k in range(1, max_k + 1):
                ratio = values[k] / values[k - 1]
                if not ratio < RATIO_CEILING:
                    failures.append({'orbit': [str(s) for s in symmetry_orbit(head)], 'k': k,
                                     'ratio': decimal_string(ratio, 8)})
        return {'claim': 'decreasing_terms', 'z': decimal_string(z_star), 'failures': failures,
                'status': 'fail' if failures else 'pass'}

    def verify_shift_pair_overlap(self, max_m: int = 7) -> Dict:
        """A non-monotone pattern with shifts 2 and 3 both overlapping has length 4."""
        witnesses = []
        for m in range(4, max_m + 1):
            for sigma in all_patterns(m):
                overlaps = overlap_set(sigma)
                if not sigma.is_monotone() and 2 in overlaps and 3 in overlaps and m != 4:
                    witnesses.append(str(sigma))
        return {'claim': 'shifts_2_and_3', 'max_m': max_m, 'witnesses': witnesses,
                'status': 'fail' if witnesses else 'pass'}

    def verify_two_cluster_bound(self, max_m: int = 7) -> Dict:
        """r_{m+l,2} <= C(2l-1, l-1) for every pattern and every overlap l."""
        witnesses = []
        for m in range(2, max_m + 1):
            for head in _orbit_heads(m):
                for shift in head.overlaps:
                    value = cluster_number(head, m + shift, 2)
                    if value > comb(2 * shift - 1, shift - 1):
                        witnesses.append({'pattern': str(head), 'shift': shift, 'r': value})
        return {'claim': 'two_cluster_bound', 'max_m': max_m, 'witnesses': witnesses,
                'status': 'fail' if witnesses else 'pass'}

    def verify_inequality_suite(self, m: int) -> Dict:
        """Grid checks of the omega bounds plus the structural property checks."""
        c_bracket = self.analyzer.smallest_root_of_quartic_c()
        grid = rational_grid(c_bracket.hi)
        reps = self._classes(m).representatives

        sandwiches = [self.verify_sandwich(sigma, grid) for sigma in reps]
        checks = [
            self.verify_monotone_upper_bound(m, grid),
            {'claim': 'sandwich', 'patterns': sandwiches,
             'status': 'pass' if all(not s['violations'] for s in sandwiches) else 'fail'},
            self.verify_monotone_below(m, reps, grid),
            self.verify_decreasing_terms(m),
            self.verify_shift_pair_overlap(),
            self.verify_two_cluster_bound(),
        ]
        if m >= 4:
            checks.append(self.verify_nonoverlapping_chain(m, reps, grid))
            checks.append(verify_closed_form_d(m))
        if m >= 3:
            checks.append(verify_f_orderings(m))
        passed = all(check['status'] == 'pass' for check in checks)
        return {'suite': 'inequalities', 'm': m, 'grid_size': len(grid),
                'grid_upper': decimal_string(c_bracket.hi), 'checks': checks,
                'status': 'pass' if passed else 'fail'}

    # Derivative sign

    def verify_derivative_suite(self, m: int) -> Dict:
        reps = self._classes(m).representatives
        results = [self.analyzer.verify_derivative_negativity(sigma) for sigma in reps]
        passed = all(result['status'] == 'pass' for result in results)
        return {'suite': 'derivative', 'm': m, 'patterns': results,
                'status': 'pass' if passed else 'fail'}

    def verify_anomaly_pair(self) -> Dict:
        report = self.census.verify_d_anomaly_pair()
        report['suite'] = 'anomaly-pair'
        return report
