#!/usr/bin/env python3
"""
Non-Overlapping Census Component
Counts non-overlapping patterns, lists their canonical endpoint pairs and
tabulates the 2-cluster counts that order them.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Optional, Tuple

from components.cluster import d_k, f, is_nonoverlapping
from components.egf import avoider_counts, occurrence_distribution_rows
from components.errors import InvalidInputError
from components.perm_core import Pattern, all_patterns

logger = logging.getLogger(__name__)

RATIO_FLOOR = Fraction(364, 1000)
ANOMALY_PAIR = ("23567184", "34671285")
WITNESS_MIN_M = 5


def delta_pairs(m: int) -> List[Tuple[int, int]]:
    """(a, b) with 1 <= a < b <= m-1 and a + b <= m+1."""
    return [(a, b) for a in range(1, m) for b in range(a + 1, m) if a + b <= m + 1]


def delta_size_formula(m: int) -> int:
    return (m * m - 4) // 4


def witness_pattern(a: int, b: int, m: int) -> Pattern:
    """a (a+1) ... (m-1) with b left out, then 1 2 ... (a-1), then m b."""
    head = [x for x in range(a, m) if x != b]
    return Pattern.of(head + list(range(1, a)) + [m, b])


@dataclass
class DeltaPair:
    a: int
    b: int
    d2: int
    witness: Optional[Pattern]
    witness_ok: bool
    d2_linext: Optional[int] = None
    d3: Optional[int] = None

    def to_dict(self) -> Dict:
        data = {'a': self.a, 'b': self.b, 'd2': str(self.d2),
                'witness': str(self.witness) if self.witness is not None else None, 'witness_ok': self.witness_ok}
        if self.d2_linext is not None:
            data['d2_linext'] = str(self.d2_linext)
        if self.d3 is not None:
            data['d3'] = str(self.d3)
        return data


@dataclass
class CensusReport:
    m: int
    count: int
    ratio: Fraction
    delta_pairs: List[DeltaPair] = field(default_factory=list)
    checks: Dict[str, bool] = field(default_factory=dict)
    extremes: Dict[str, Dict] = field(default_factory=dict)
    observed_classes_lower_bound: Optional[int] = None

    @property
    def status(self) -> str:
        return 'pass' if all(self.checks.values()) else 'fail'

    def to_dict(self) -> Dict:
        return {
            'm': self.m,
            'count': self.count,
            'ratio': f"{float(self.ratio):.6f}",
            'delta_size': len(self.delta_pairs),
            'delta_pairs': [pair.to_dict() for pair in self.delta_pairs],
            'extremes': self.extremes,
            'observed_classes_lower_bound': self.observed_classes_lower_bound,
            'checks': self.checks,
            'status': self.status,
        }

    def rows(self) -> List[Tuple[int, int, int, str, str]]:
        return [(self.m, pair.a, pair.b, str(pair.d2), str(pair.witness) if pair.witness is not None else "")
                for pair in self.delta_pairs]


class NonOverlapCensus:
    """Census of non-overlapping patterns of one length."""

    def __init__(self, linext_check_max_m: int = 6, d3_max_m: int = 8):
        self.linext_check_max_m = linext_check_max_m
        self.d3_max_m = d3_max_m
        logger.info("Non-Overlap Census initialized")

    def nonoverlapping_patterns(self, m: int) -> List[Pattern]:
        return [sigma for sigma in all_patterns(m) if is_nonoverlapping(sigma)]

    def extremes(self, m: int) -> Dict[str, Dict]:
        """Two largest and two smallest values of f over the endpoint pairs."""
        values = sorted(((f(a, b, m), (a, b)) for a, b in delta_pairs(m)), reverse=True)
        labels = ['largest', 'second_largest', 'second_smallest', 'smallest']
        picks = [values[0], values[1], values[-2], values[-1]]
        return {label: {'value': str(value), 'a': a, 'b': b}
                for label, (value, (a, b)) in zip(labels, picks)}

    def census(self, m: int) -> CensusReport:
        if m < 3:
            raise InvalidInputError(f"Census needs m >= 3, got {m}")
        patterns = self.nonoverlapping_patterns(m)
        ratio = Fraction(len(patterns), factorial(m))
        report = CensusReport(m, len(patterns), ratio)
        report.checks['ratio_at_least_0.364'] = ratio >= RATIO_FLOOR

        with_linext = m <= self.linext_check_max_m
        signatures = set()
        for a, b in delta_pairs(m):
            witness = witness_pattern(a, b, m)
            ok = is_nonoverlapping(witness) and witness.entries[0] == a and witness.entries[-1] == b
            if not ok and m < WITNESS_MIN_M:
                # no non-overlapping pattern of this length has these endpoints
                witness = None
            pair = DeltaPair(a, b, f(a, b, m), witness, ok)
            if ok and with_linext:
                pair.d2_linext = d_k(witness, 2)
            if ok and m <= self.d3_max_m:
                pair.d3 = d_k(witness, 3)
                signatures.add((pair.d2, pair.d3))
            report.delta_pairs.append(pair)

        report.checks['witnesses_nonoverlapping'] = all(
            pair.witness_ok for pair in report.delta_pairs if pair.witness is not None)
        if m >= 5:
            report.checks['delta_size_formula'] = len(report.delta_pairs) == delta_size_formula(m)
            report.extremes = self.extremes(m)
            expected = {
                'largest': (comb(2 * m - 3, m - 2), (1, 2)),
                'second_largest': (3 * comb(2 * m - 5, m - 3), (2, 3)),
                'second_smallest': (comb(m + 1, 2), (1, m - 2)),
                'smallest': (m, (1, m - 1)),
            }
            report.checks['extremes_located'] = all(
                report.extremes[label]['value'] == str(value)
                and (report.extremes[label]['a'], report.extremes[label]['b']) == where
                for label, (value, where) in expected.items())
        if with_linext:
            report.checks['d2_equals_f'] = all(
                d_k(sigma, 2) == f(sigma.entries[0], sigma.entries[-1], m) for sigma in patterns)
        if signatures:
            report.observed_classes_lower_bound = len(signatures)

        logger.info(f"Census m={m}: {len(patterns)} non-overlapping, |Delta|={len(report.delta_pairs)}")
        return report

    def endpoint_invariance(self, m: int, max_k: int = 4) -> Dict:
        """Patterns sharing first and last entries have equal d_k for k <= max_k."""
        groups: Dict[Tuple[int, int], List[Pattern]] = {}
        for sigma in self.nonoverlapping_patterns(m):
            groups.setdefault((sigma.entries[0], sigma.entries[-1]), []).append(sigma)
        violations = []
        for (a, b), members in sorted(groups.items()):
            for k in range(1, max_k + 1):
                values = {d_k(sigma, k) for sigma in members}
                if len(values) > 1:
                    violations.append({'a': a, 'b': b, 'k': k})
        return {'m': m, 'groups': len(groups), 'violations': violations,
                'status': 'fail' if violations else 'pass'}

    def check_strong_equivalence(self, m: int, n: int) -> Dict:
        """Equal avoider counts imply equal occurrence distributions among non-overlapping patterns."""
        patterns = self.nonoverlapping_patterns(m)
        alphas = {sigma: tuple(avoider_counts(sigma, n)) for sigma in patterns}
        distributions = {sigma: tuple(row.counts for row in occurrence_distribution_rows(sigma, n))
                         for sigma in patterns}
        violations = []
        for i, sigma in enumerate(patterns):
            for tau in patterns[i + 1:]:
                same_alpha = alphas[sigma] == alphas[tau]
                same_distribution = distributions[sigma] == distributions[tau]
                same_ends = (sigma.entries[0], sigma.entries[-1]) == (tau.entries[0], tau.entries[-1])
                if same_alpha != same_distribution or (same_ends and not same_distribution):
                    violations.append({'sigma': str(sigma), 'tau': str(tau)})
        return {'m': m, 'n': n, 'patterns': len(patterns), 'violations': violations,
                'status': 'fail' if violations else 'pass'}

    def verify_d_anomaly_pair(self) -> Dict:
        """Equal d_2 but different d_3 for two non-overlapping patterns of length 8."""
        sigma, tau = (Pattern.parse(text) for text in ANOMALY_PAIR)
        report = {'sigma': str(sigma), 'tau': str(tau),
                  'nonoverlapping': is_nonoverlapping(sigma) and is_nonoverlapping(tau)}
        if not report['nonoverlapping']:
            report['status'] = 'fail'
            return report
        values = {'d2_sigma': d_k(sigma, 2), 'd2_tau': d_k(tau, 2),
                  'd3_sigma': d_k(sigma, 3), 'd3_tau': d_k(tau, 3)}
        report.update({name: str(value) for name, value in values.items()})
        report['d2_equal'] = values['d2_sigma'] == values['d2_tau']
        report['d3_differ'] = values['d3_sigma'] != values['d3_tau']
        report['status'] = 'pass' if report['d2_equal'] and report['d3_differ'] else 'fail'
        return report
